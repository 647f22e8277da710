#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "signrace/almost_period.hpp"
#include "signrace/errors.hpp"
#include "signrace/zeta_zeros.hpp"

using namespace signrace;

namespace {

double image_norm(double s, const std::vector<double>& freqs) {
    std::vector<double> v;
    for (double f : freqs) v.push_back(s * f);
    return oracle::torus(v);
}

void check_valid(const AlmostPeriodSet& set) {
    REQUIRE(set.s.size() == set.N);
    for (std::size_t i = 0; i < set.s.size(); ++i) {
        CHECK(set.s[i] > 1.0);
        CHECK(set.s[i] <= set.M + 1.0);
        CHECK(image_norm(set.s[i], set.freqs) < set.epsilon);
        if (i > 0) CHECK(set.s[i] >= set.s[i - 1] + set.min_gap);
    }
}

}  // namespace

TEST_CASE("torus norm examples") {
    const double a[] = {0.5};
    CHECK(torus_norm(a) == 0.5);
    const double b[] = {1.0, 2.0};
    CHECK(torus_norm(b) == 0.0);
    const double c[] = {0.3, 0.8};
    CHECK(torus_norm(c) == doctest::Approx(std::sqrt(0.13)));
    const double d[] = {-0.3, 7.9};
    CHECK(torus_norm(d) == doctest::Approx(std::sqrt(0.09 + 0.01)));
}

TEST_CASE("bound halves eps at cost 2^n") {
    for (std::size_t n = 1; n <= 4; ++n) {
        CHECK(almost_period_bound(n, 0.05, 3) == doctest::Approx(std::pow(2.0, n) * almost_period_bound(n, 0.1, 3)));
    }
}

TEST_CASE("integer frequency") {
    const double f[] = {1.0};
    const auto set = find_almost_periods(f, 0.1, 2);
    check_valid(set);
}

TEST_CASE("single irrational frequency") {
    const double f[] = {std::numbers::sqrt2};
    const auto set = find_almost_periods(f, 0.1, 1);
    check_valid(set);
    CHECK(image_norm(5.0, {std::numbers::sqrt2}) < 0.1);
    const double oracle_s = oracle::dense_first_almost_period({std::numbers::sqrt2}, 0.1, 1e-4, set.M + 1.0);
    CHECK(std::abs(set.s[0] - oracle_s) <= set.grid_step);
}

TEST_CASE("two frequencies with both strategies") {
    const double f[] = {std::numbers::sqrt2, std::sqrt(3.0)};
    const std::vector<double> fv(std::begin(f), std::end(f));
    for (auto strategy : {AlmostPeriodStrategy::GridScan, AlmostPeriodStrategy::Pigeonhole}) {
        const auto set = find_almost_periods(f, 0.25, 3, 1.0, strategy);
        check_valid(set);
    }
    const auto grid = find_almost_periods(f, 0.25, 1);
    const double o = oracle::dense_first_almost_period(fv, 0.25, grid.grid_step / 8.0, grid.M + 1.0);
    CHECK(std::abs(grid.s[0] - o) <= grid.grid_step);
}

TEST_CASE("randomized instances agree with a dense scan") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> uf(0.3, 3.0);
    std::uniform_real_distribution<double> ue(0.08, 0.3);
    std::uniform_int_distribution<int> un(1, 3);
    for (int trial = 0; trial < 12; ++trial) {
        const int n = un(rng);
        std::vector<double> f(static_cast<std::size_t>(n));
        for (auto& x : f) x = uf(rng);
        const double eps = ue(rng);
        const auto set = find_almost_periods(f, eps, 3, 0.5);
        check_valid(set);
        const double o = oracle::dense_first_almost_period(f, eps, set.grid_step / 8.0, set.M + 1.0);
        INFO("trial " << trial);
        CHECK(std::abs(set.s[0] - o) <= set.grid_step);
    }
}

TEST_CASE("zeta ordinates satisfy the phase criterion") {
    const auto z = compute_zeros(40.0);
    for (std::size_t n = 1; n <= 3; ++n) {
        std::vector<double> f;
        for (std::size_t i = 0; i < n; ++i) f.push_back(z.gammas[i] / (2.0 * std::numbers::pi));
        const double eps = 1.0 / (4.0 * std::sqrt(static_cast<double>(n)));
        const auto set = find_almost_periods(f, eps, 2);
        for (double s : set.s) {
            double acc = 0.0;
            for (double g : f) {
                const double d = 2.0 * std::numbers::pi * (s * g - std::round(s * g));
                acc += d * d;
            }
            CHECK(acc <= eps * eps * 4.0 * std::numbers::pi * std::numbers::pi);
        }
    }
}

TEST_CASE("results are deterministic") {
    const double f[] = {0.7, 1.9, 2.3};
    const auto a = find_almost_periods(f, 0.2, 4);
    const auto b = find_almost_periods(f, 0.2, 4);
    CHECK(a.s == b.s);
    CHECK(a.to_json().dump() == b.to_json().dump());
}

TEST_CASE("input validation") {
    const double f[] = {1.5};
    CHECK_THROWS_AS(find_almost_periods(f, 0.0, 1), DomainError);
    CHECK_THROWS_AS(find_almost_periods(f, 0.6, 1), DomainError);
    CHECK_THROWS_AS(find_almost_periods(f, 0.1, 0), DomainError);
    CHECK_THROWS_AS(find_almost_periods(f, 0.1, 1, -1.0), DomainError);
    const double neg[] = {-1.0};
    CHECK_THROWS_AS(find_almost_periods(neg, 0.1, 1), DomainError);
    const std::vector<double> nine(9, 1.1);
    CHECK_THROWS_AS(find_almost_periods(nine, 0.1, 1), CapacityError);
}
