#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "signrace/errors.hpp"
#include "signrace/zeta_zeros.hpp"

using namespace signrace;

namespace {

const ZeroList& zeros_1000() {
    static const ZeroList z = compute_zeros(1000.0);
    return z;
}

}  // namespace

TEST_CASE("Hardy Z brackets the first zero") {
    CHECK(hardy_z(14.1) * hardy_z(14.2) < 0.0);
}

TEST_CASE("Z squared matches |zeta|^2 from an independent Euler-Maclaurin sum") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(10.0, 500.0);
    for (int i = 0; i < 20; ++i) {
        const double t = u(rng);
        const double z = hardy_z(t);
        const double em = std::norm(oracle::zeta_em({0.5, t}));
        INFO("t = " << t);
        CHECK(std::abs(z * z - em) < 1e-5);
    }
}

TEST_CASE("Riemann-Siegel modulus matches Euler-Maclaurin above t = 60") {
    for (double t = 60.0; t < 200.0; t += 7.3) {
        const double em = std::abs(oracle::zeta_em({0.5, t}));
        CHECK(std::abs(std::abs(riemann_siegel_z(t)) - em) < 1e-6);
    }
}

TEST_CASE("compute_zeros at T = 100") {
    const auto z = compute_zeros(100.0);
    CHECK(z.gammas.size() == 29);
    CHECK(z.gammas[0] == doctest::Approx(14.134725).epsilon(1e-7));
    CHECK(std::abs(z.gammas[0] - oracle::first_zeta_zeros()[0]) < 1e-6);
    CHECK(z.complete_to == 100.0);
}

TEST_CASE("compute_zeros at T = 15 and T = 14") {
    CHECK(compute_zeros(15.0).gammas.size() == 1);
    CHECK(compute_zeros(14.0).gammas.empty());
}

TEST_CASE("first ten zeros agree with published ordinates") {
    const auto& z = zeros_1000();
    for (std::size_t i = 0; i < 10; ++i) CHECK(std::abs(z.gammas[i] - oracle::first_zeta_zeros()[i]) < 1e-8);
}

TEST_CASE("first ten zeros are stable across grid densities") {
    ZeroSearchOptions fine;
    fine.step = 0.0125;
    const auto a = compute_zeros(60.0);
    const auto b = compute_zeros(60.0, fine);
    REQUIRE(a.gammas.size() == b.gammas.size());
    for (std::size_t i = 0; i < 10; ++i) CHECK(std::abs(a.gammas[i] - b.gammas[i]) < 1e-8);
}

TEST_CASE("N(1000) and the Riemann-von Mangoldt main term") {
    const auto& z = zeros_1000();
    CHECK(z.gammas.size() == 649);
    for (double T = 15.0; T <= 1000.0; T += 0.5) {
        const double x = T / (2.0 * std::numbers::pi);
        const double main = x * std::log(x) - x + 7.0 / 8.0;
        CHECK(std::abs(static_cast<double>(z.count_below(T)) - main) < 2.0);
    }
}

TEST_CASE("argument principle count is integral between zeros") {
    CHECK(std::abs(argument_principle_count(100.0) - 29.0) < 0.05);
    CHECK(std::abs(argument_principle_count(500.0) - 269.0) < 0.05);
}

TEST_CASE("Gram points") {
    CHECK(gram_point(0) == doctest::Approx(17.8455995).epsilon(1e-7));
    for (long n = 0; n < 50; ++n) CHECK(std::abs(rs_theta(gram_point(n)) - n * std::numbers::pi) < 1e-9);
}

TEST_CASE("zero count inequalities hold at every integer height") {
    const auto& z = zeros_1000();
    for (int T = 3; T <= 999; ++T) {
        const auto r = check_lemma3(z, T);
        INFO("T = " << T);
        CHECK(r.status == Status::Pass);
    }
    CHECK(check_lemma3(z, 100.0).measured["N(T)"] == 29);
    CHECK(check_lemma3(z, 2.5).status == Status::Pass);
}

TEST_CASE("reciprocal square sum brackets the closed form") {
    const double exact = reciprocal_square_sum_exact();
    CHECK(exact == doctest::Approx(0.0461914179).epsilon(1e-9));
    for (double T : {100.0, 300.0, 1000.0}) {
        const auto b = reciprocal_square_sum(compute_zeros(T));
        CHECK(b.contains(exact));
    }
    CHECK(reciprocal_square_sum(zeros_1000()).width() < 0.02);
}

TEST_CASE("zero file round trip") {
    const auto z = compute_zeros(200.0);
    std::stringstream ss;
    save_zeros(ss, z);
    const auto back = load_zeros(ss);
    REQUIRE(back.gammas.size() == z.gammas.size());
    for (std::size_t i = 0; i < z.gammas.size(); ++i) CHECK(std::abs(back.gammas[i] - z.gammas[i]) < 1e-9);
    CHECK(back.complete_to == z.complete_to);
    CHECK(back.source == ZeroSource::Loaded);
}

TEST_CASE("zero file parsing") {
    std::stringstream ok("14.134725142\n21.022039639\n");
    CHECK(load_zeros(ok).gammas.size() == 2);

    std::stringstream empty("");
    CHECK_THROWS_AS(load_zeros(empty), ParseError);

    std::stringstream desc("21.022039639\n14.134725142\n");
    try {
        load_zeros(desc);
        FAIL("descending input accepted");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }

    std::stringstream short_digits("14.1347\n");
    CHECK_THROWS_AS(load_zeros(short_digits), ParseError);
}

TEST_CASE("compute_zeros range checks") {
    CHECK_THROWS_AS(compute_zeros(5.0), DomainError);
    CHECK_THROWS_AS(compute_zeros(2e4), CapacityError);
}
