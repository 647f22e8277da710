#include <cmath>
#include <complex>
#include <numeric>

#include "doctest.h"
#include "oracles.hpp"
#include "signrace/characters.hpp"
#include "signrace/errors.hpp"
#include "signrace/sieve.hpp"

using namespace signrace;

TEST_CASE("mod 3 has the principal and the quadratic character") {
    const auto t = CharacterTable::build(3);
    CHECK(t.size() == 2);
    CHECK(t.value(0, 2) == std::complex<double>(1.0, 0.0));
    CHECK(std::abs(t.value(1, 2) - std::complex<double>(-1.0, 0.0)) < 1e-15);
    CHECK(t.is_real(1));
}

TEST_CASE("mod 4 non-principal character is odd with chi(3) = -1") {
    const auto t = CharacterTable::build(4);
    CHECK(t.size() == 2);
    CHECK(std::abs(t.value(1, 3) + 1.0) < 1e-15);
    CHECK(t.parity(1) == 1);
    CHECK(t.parity(0) == 0);
}

TEST_CASE("mod 5 has four characters and sum chi(2) conj chi(3) vanishes") {
    const auto t = CharacterTable::build(5);
    CHECK(t.size() == 4);
    std::complex<double> s = 0.0;
    for (std::size_t k = 0; k < t.size(); ++k) s += t.value(k, 2) * std::conj(t.value(k, 3));
    CHECK(std::abs(s) < 1e-12);
}

TEST_CASE("values vanish off the units and are periodic") {
    const auto t = CharacterTable::build(12);
    for (std::size_t k = 0; k < t.size(); ++k) {
        CHECK(t.value(k, 6) == std::complex<double>(0.0, 0.0));
        CHECK(std::abs(t.value(k, 5) - t.value(k, 17)) < 1e-15);
        CHECK(std::abs(t.value(k, -7) - t.value(k, 5)) < 1e-15);
    }
}

TEST_CASE("orthogonality holds for every q up to 200") {
    for (std::int64_t q = 3; q <= 200; ++q) {
        const auto t = CharacterTable::build(q);
        const auto units = t.units();
        const auto phi = static_cast<double>(t.phi());
        double worst_rows = 0.0;
        for (std::size_t j = 0; j < t.size(); ++j) {
            const auto vj = t.values(j);
            for (std::size_t k = j; k < t.size(); ++k) {
                const auto vk = t.values(k);
                std::complex<double> s = 0.0;
                for (auto n : units) s += vj[static_cast<std::size_t>(n)] * std::conj(vk[static_cast<std::size_t>(n)]);
                const double expect = j == k ? phi : 0.0;
                worst_rows = std::max(worst_rows, std::abs(s - expect) / phi);
            }
        }
        // column orthogonality through the squared modulus sum
        double col = 0.0;
        for (auto a : units) {
            double s = 0.0;
            for (std::size_t k = 0; k < t.size(); ++k) s += std::norm(t.value(k, a));
            col += s;
        }
        INFO("q = " << q);
        CHECK(worst_rows < 1e-12);
        CHECK(std::abs(col / phi - phi) < 1e-9);
    }
}

TEST_CASE("characters are completely multiplicative") {
    for (std::int64_t q : {7, 16, 21, 45}) {
        const auto t = CharacterTable::build(q);
        for (std::size_t k = 0; k < t.size(); ++k) {
            for (std::int64_t m = 1; m < q; ++m) {
                for (std::int64_t n = 1; n < q; ++n) {
                    CHECK(std::abs(t.value(k, m * n) - t.value(k, m) * t.value(k, n)) < 1e-12);
                }
            }
        }
    }
}

TEST_CASE("conjugate and primitivity are consistent") {
    const auto t = CharacterTable::build(8);
    for (std::size_t k = 0; k < t.size(); ++k) {
        const auto c = t.conjugate(k);
        for (std::int64_t n = 1; n < 8; n += 2) CHECK(std::abs(t.value(c, n) - std::conj(t.value(k, n))) < 1e-15);
    }
    // mod 8: the character induced from mod 4 is imprimitive; two are primitive
    int primitive = 0;
    for (std::size_t k = 0; k < t.size(); ++k) primitive += t.is_primitive(k) ? 1 : 0;
    CHECK(primitive == 2);
    CHECK_FALSE(CharacterTable::build(9).is_primitive(0));
}

TEST_CASE("build rejects moduli below 3") {
    CHECK_THROWS_AS(CharacterTable::build(2), DomainError);
    CHECK_THROWS_AS(CharacterTable::build(-5), DomainError);
}

TEST_CASE("square roots of unity") {
    CHECK(count_square_roots_of_unity(4) == 2);
    CHECK(count_square_roots_of_unity(8) == 4);
    CHECK(count_square_roots_of_unity(1) == 1);
}

TEST_CASE("square root count is multiplicative and matches brute force") {
    auto brute = [](std::int64_t q) {
        std::int64_t c = 0;
        for (std::int64_t x = 1; x <= q; ++x) c += (x * x) % q == 1 % q ? 1 : 0;
        return c;
    };
    for (std::int64_t q = 1; q <= 10000; q += (q < 500 ? 1 : 37)) {
        CHECK(count_square_roots_of_unity(q) == brute(q));
    }
    for (std::int64_t m = 1; m <= 60; ++m) {
        for (std::int64_t n = 1; n <= 60; ++n) {
            if (std::gcd(m, n) != 1) continue;
            CHECK(count_square_roots_of_unity(m * n) == count_square_roots_of_unity(m) * count_square_roots_of_unity(n));
        }
    }
}

TEST_CASE("von Mangoldt values") {
    CHECK(von_mangoldt(1) == 0.0);
    CHECK(von_mangoldt(8) == doctest::Approx(0.693147).epsilon(1e-6));
    CHECK(von_mangoldt(12) == 0.0);
    for (std::int64_t n = 1; n <= 5000; ++n) CHECK(von_mangoldt(n) == doctest::Approx(oracle::lambda(n)));
}

TEST_CASE("summed von Mangoldt equals the sieve psi up to 1e5") {
    const std::int64_t x = 100000;
    std::vector<std::int64_t> cps;
    for (std::int64_t c = 1000; c <= x; c += 1000) cps.push_back(c);
    const auto cen = census(3, x, cps);
    double s = 0.0;
    std::size_t i = 0;
    for (std::int64_t n = 1; n <= x; ++n) {
        s += von_mangoldt(n);
        if (i < cps.size() && n == cps[i]) {
            CHECK(s == doctest::Approx(cen.psi_total[i]).epsilon(1e-12));
            ++i;
        }
    }
}

TEST_CASE("euler phi and factorize") {
    CHECK(euler_phi(1) == 1);
    CHECK(euler_phi(36) == 12);
    CHECK(euler_phi(97) == 96);
    const auto f = factorize(360);
    REQUIRE(f.size() == 3);
    CHECK(f[0] == std::pair<std::int64_t, int>{2, 3});
    CHECK(f[1] == std::pair<std::int64_t, int>{3, 2});
    CHECK(f[2] == std::pair<std::int64_t, int>{5, 1});
}
