#include <cmath>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "signrace/errors.hpp"
#include "signrace/race.hpp"
#include "signrace/sieve.hpp"
#include "signrace/special.hpp"

using namespace signrace;

namespace {

void check_against_oracle(std::int64_t q, std::int64_t x_max) {
    const auto r = race_scan(q, x_max);
    const auto o = oracle::race(q, x_max);
    INFO("q = " << q);
    REQUIRE(r.crossings.size() == o.crossings.size());
    for (std::size_t i = 0; i < o.crossings.size(); ++i) {
        CHECK(r.crossings[i].x == o.crossings[i].x);
        CHECK(r.crossings[i].direction == o.crossings[i].direction);
    }
    CHECK(r.first_positive == o.first_positive);
}

}  // namespace

TEST_CASE("first lead of class 1 mod 4") {
    const auto r = race_scan(4, 30000);
    const auto o = oracle::race(4, 30000);
    CHECK(r.first_positive == o.first_positive);
    CHECK(r.first_positive == 26861);
}

TEST_CASE("class 1 mod 3 never leads below 100") {
    const auto r = race_scan(3, 100);
    CHECK(r.first_positive == -1);
    CHECK(r.crossings.empty());
}

TEST_CASE("x_max = 2 gives no crossings") {
    for (std::int64_t q : {3, 4, 5, 8}) CHECK(race_scan(q, 2).crossings.empty());
}

TEST_CASE("crossings match the trial division race to 1e5") {
    for (std::int64_t q : {3, 4, 5, 8}) check_against_oracle(q, 100000);
    check_against_oracle(12, 50000);
}

TEST_CASE("crossing invariants") {
    for (std::int64_t q : {3, 4, 5, 7, 8}) {
        const auto r = race_scan(q, 2000000);
        for (std::size_t i = 1; i < r.crossings.size(); ++i) {
            CHECK(r.crossings[i].x > r.crossings[i - 1].x);
            CHECK(r.crossings[i].direction == -r.crossings[i - 1].direction);
        }
        REQUIRE_FALSE(r.V.empty());
        CHECK(r.checkpoints.back() == r.x_max);
        CHECK(r.V.back() == static_cast<std::int64_t>(r.crossings.size()));
        for (const auto& c : r.crossings) {
            CHECK(std::binary_search(r.checkpoints.begin(), r.checkpoints.end(), c.x));
        }
        for (std::size_t i = 1; i < r.V.size(); ++i) CHECK(r.V[i] >= r.V[i - 1]);
        double total = r.tie_fraction;
        for (double f : r.lead_fraction) total += f;
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("lead histogram against brute force") {
    const std::int64_t q = 5, x_max = 3000;
    const auto r = race_scan(q, x_max);
    std::vector<std::int64_t> lead(5, 0);
    std::int64_t ties = 0;
    for (std::int64_t x = 2; x <= x_max; ++x) {
        std::int64_t best = -1, who = -1, n_best = 0;
        for (std::int64_t a = 1; a < q; ++a) {
            const auto c = oracle::pi_mod(x, q, a);
            if (c > best) {
                best = c;
                who = a;
                n_best = 1;
            } else if (c == best) {
                ++n_best;
            }
        }
        if (n_best == 1) {
            ++lead[static_cast<std::size_t>(who)];
        } else {
            ++ties;
        }
    }
    for (std::size_t j = 0; j < r.residues.size(); ++j) {
        CHECK(r.lead_fraction[j] == doctest::Approx(static_cast<double>(lead[static_cast<std::size_t>(r.residues[j])]) / (x_max - 1)));
    }
    CHECK(r.tie_fraction == doctest::Approx(static_cast<double>(ties) / (x_max - 1)));
}

TEST_CASE("race reports are deterministic") {
    const auto a = race_scan(4, 500000);
    const auto b = race_scan(4, 500000);
    CHECK(a.to_json().dump() == b.to_json().dump());
    std::ostringstream ca, cb;
    write_crossings_csv(ca, a);
    write_crossings_csv(cb, b);
    CHECK(ca.str() == cb.str());
    CHECK(ca.str().rfind("x,direction\n", 0) == 0);
    std::ostringstream v;
    write_v_csv(v, a);
    CHECK(v.str().rfind("x,V\n", 0) == 0);
}

TEST_CASE("race_scan argument checks") {
    CHECK_THROWS_AS(race_scan(2, 100), DomainError);
    CHECK_THROWS_AS(race_scan(4, kSieveCapacity + 1), CapacityError);
}

TEST_CASE("li stays above pi") {
    const auto r = pi_li_race_scan(1000000);
    CHECK(r.status == Status::ReportOnly);
    CHECK(r.measured["li_exceeds_pi_everywhere"].get<bool>());
    const auto small = pi_li_race_scan(10);
    CHECK(small.measured["li_exceeds_pi_everywhere"].get<bool>());
    CHECK(li(10.0) == doctest::Approx(6.1655995).epsilon(1e-7));
}

TEST_CASE("psi excess takes both signs below 1e8") {
    const auto r = pi_li_race_scan(100000000);
    CHECK(r.measured["psi_excess_positive_count"].get<std::size_t>() > 0);
    CHECK(r.measured["psi_excess_negative_count"].get<std::size_t>() > 0);
    CHECK(r.measured["li_exceeds_pi_everywhere"].get<bool>());
}

TEST_CASE("zero prediction tracks psi excess") {
    const auto z = compute_zeros(1000.0);
    const auto r = pi_li_race_scan(1000000, &z, 1000.0);
    CHECK(r.measured["zero_prediction_rms"].get<double>() < 0.1);
}

TEST_CASE("psi race per residue") {
    const auto r = psi_race_scan(3, 1000);
    const auto& m = r.measured["residues"]["2"];
    const double expect = (oracle::psi_mod(1000, 3, 1) - oracle::psi_mod(1000, 3, 2)) / std::sqrt(1000.0);
    CHECK(m["final"].get<double>() == doctest::Approx(expect).epsilon(1e-12));
    CHECK(r.status == Status::ReportOnly);

    const auto r4 = psi_race_scan(4, 10000000);
    CHECK(r4.measured["residues"]["3"]["max"].get<double>() > r4.measured["residues"]["3"]["min"].get<double>());
    CHECK(r4.bound["7 f(q)/phi(q)"].get<double>() == 7.0);

    const auto empty = psi_race_scan(5, 2);
    for (auto& [k, v] : empty.measured["residues"].items()) {
        CHECK(v["max"].get<double>() == 0.0);
        CHECK(v["min"].get<double>() == 0.0);
    }
}
