#pragma once

// Independent reference computations used only by the tests.  Everything here
// is deliberately naive: trial division, direct summation, dense scans.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <vector>

namespace oracle {

inline bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::int64_t d = 3; d * d <= n; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

// log p when n = p^k, else 0, by trial division.
inline double lambda(std::int64_t n) {
    if (n < 2) return 0.0;
    std::int64_t p = 2;
    while (p * p <= n && n % p != 0) ++p;
    if (p * p > n) p = n;
    std::int64_t m = n;
    while (m % p == 0) m /= p;
    return m == 1 ? std::log(static_cast<double>(p)) : 0.0;
}

inline std::int64_t pi(std::int64_t x) {
    std::int64_t c = 0;
    for (std::int64_t n = 2; n <= x; ++n) c += is_prime(n) ? 1 : 0;
    return c;
}

inline std::int64_t pi_mod(std::int64_t x, std::int64_t q, std::int64_t a) {
    std::int64_t c = 0;
    for (std::int64_t n = 2; n <= x; ++n) c += (n % q == a && is_prime(n)) ? 1 : 0;
    return c;
}

inline double psi(double x) {
    double s = 0.0;
    for (std::int64_t n = 2; n <= static_cast<std::int64_t>(std::floor(x)); ++n) s += lambda(n);
    return s;
}

inline double psi_mod(std::int64_t x, std::int64_t q, std::int64_t a) {
    double s = 0.0;
    for (std::int64_t n = 2; n <= x; ++n) {
        if (n % q == a) s += lambda(n);
    }
    return s;
}

struct OracleCrossing {
    std::int64_t x;
    int direction;
};

struct OracleRace {
    std::vector<OracleCrossing> crossings;
    std::int64_t first_positive = -1;
};

// Residue-tagged trial-division race: recomputes the max over all other
// classes from scratch at every prime.
inline OracleRace race(std::int64_t q, std::int64_t x_max) {
    std::vector<std::int64_t> count(static_cast<std::size_t>(q), 0);
    OracleRace r;
    int last = 0;
    for (std::int64_t n = 2; n <= x_max; ++n) {
        if (!is_prime(n)) continue;
        ++count[static_cast<std::size_t>(n % q)];
        std::int64_t best = 0;
        for (std::int64_t a = 2; a < q; ++a) {
            if (std::gcd(a, q) == 1) best = std::max(best, count[static_cast<std::size_t>(a)]);
        }
        const std::int64_t d = count[1] - best;
        if (d == 0) continue;
        const int s = d > 0 ? 1 : -1;
        if (s > 0 && r.first_positive < 0) r.first_positive = n;
        if (last != 0 && s != last) r.crossings.push_back({n, s});
        last = s;
    }
    return r;
}

// sum chi(n)/n^s over n <= terms for a periodic coefficient table.
inline std::complex<double> dirichlet_series(const std::vector<std::complex<double>>& chi_mod_q, double s,
                                             std::int64_t terms) {
    const auto q = static_cast<std::int64_t>(chi_mod_q.size());
    std::complex<double> acc = 0.0;
    for (std::int64_t n = terms; n >= 1; --n) acc += chi_mod_q[static_cast<std::size_t>(n % q)] * std::pow(static_cast<double>(n), -s);
    return acc;
}

// Delta_T(t) = sum_{|gamma| < T} e^{i gamma t}/rho for zeros symmetric in gamma.
inline std::complex<double> delta_symmetric(double t, const std::vector<double>& gammas, double T) {
    std::complex<double> acc = 0.0;
    for (double g : gammas) {
        if (g >= T) break;
        for (double s : {g, -g}) {
            const std::complex<double> rho(0.5, s);
            acc += std::exp(std::complex<double>(0.0, s * t)) / rho;
        }
    }
    return acc;
}

// zeta(s) by plain Euler-Maclaurin with N = |t| + 30 direct terms and six
// Bernoulli corrections.
inline std::complex<double> zeta_em(std::complex<double> s) {
    const int N = static_cast<int>(std::abs(s.imag())) + 30;
    std::complex<double> acc = 0.0;
    for (int n = 1; n < N; ++n) acc += std::pow(static_cast<double>(n), -s);
    const double Nd = N;
    acc += std::pow(Nd, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(Nd, -s);
    static const double b2k[] = {1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66, -691.0 / 2730};
    std::complex<double> rising = s;  // s (s+1) ... (s+2k-2)
    double fact = 2.0;                // (2k)!
    for (int k = 1; k <= 6; ++k) {
        acc += b2k[k - 1] / fact * rising * std::pow(Nd, -s - static_cast<double>(2 * k - 1));
        rising *= (s + static_cast<double>(2 * k - 1)) * (s + static_cast<double>(2 * k));
        fact *= (2.0 * k + 1) * (2.0 * k + 2);
    }
    return acc;
}

// Euclidean distance to the nearest lattice point.
inline double torus(const std::vector<double>& v) {
    double acc = 0.0;
    for (double x : v) {
        const double d = x - std::round(x);
        acc += d * d;
    }
    return std::sqrt(acc);
}

// First u > 1 on a dense grid with torus(u freqs) < eps.
inline double dense_first_almost_period(const std::vector<double>& freqs, double eps, double step, double limit) {
    std::vector<double> v(freqs.size());
    for (std::int64_t j = 1;; ++j) {
        const double u = 1.0 + static_cast<double>(j) * step;
        if (u > limit) return -1.0;
        for (std::size_t i = 0; i < freqs.size(); ++i) v[i] = u * freqs[i];
        if (torus(v) < eps) return u;
    }
}

// Well-known ordinates of the first ten zeta zeros.
inline const std::vector<double>& first_zeta_zeros() {
    static const std::vector<double> z = {14.134725141734693, 21.022039638771555, 25.010857580145688,
                                          30.424876125859513, 32.935061587739189, 37.586178158825671,
                                          40.918719012147495, 43.327073280914999, 48.005150881167159,
                                          49.773832477672302};
    return z;
}

}  // namespace oracle
