#include "signrace/special.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "signrace/errors.hpp"

namespace signrace {

namespace {

// B_{2k} / (2k)!, k = 1..8
constexpr std::array<double, 8> kBernoulliOverFactorial = {
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40320.0,
    5.0 / 66.0 / 3628800.0,
    -691.0 / 2730.0 / 479001600.0,
    7.0 / 6.0 / 87178291200.0,
    -3617.0 / 510.0 / 20922789888000.0,
};

// B_{2k}, k = 1..8
constexpr std::array<double, 8> kBernoulli = {
    1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0,
    5.0 / 66.0, -691.0 / 2730.0, 7.0 / 6.0, -3617.0 / 510.0,
};

// x^{-s} for real x > 0 given log x.
inline cplx pow_neg(cplx s, double log_x) {
    return std::exp(-s * log_x);
}

}  // namespace

int default_em_cutoff(cplx s) {
    return std::max(20, static_cast<int>(std::ceil(2.0 * std::abs(s.imag()))));
}

HurwitzValue hurwitz_zeta_regular(cplx s, double a, int cutoff) {
    if (!(a > 0.0)) throw DomainError("hurwitz_zeta: a must be positive");
    const int n_terms = cutoff > 0 ? cutoff : default_em_cutoff(s);

    cplx value = 0.0;
    cplx deriv = 0.0;
    for (int n = 0; n < n_terms; ++n) {
        const double lg = std::log(n + a);
        const cplx term = pow_neg(s, lg);
        value += term;
        deriv -= lg * term;
    }

    const double big_x = n_terms + a;
    const double lx = std::log(big_x);
    const cplx x_neg_s = pow_neg(s, lx);

    // (X^{1-s} - 1) / (s - 1), regular at s = 1
    const cplx u = s - 1.0;
    const cplx ul = u * lx;
    if (std::abs(ul) < 1e-3) {
        const double l2 = lx * lx;
        const double l3 = l2 * lx;
        const double l4 = l3 * lx;
        value += -lx + u * l2 / 2.0 - u * u * l3 / 6.0 + u * u * u * l4 / 24.0;
        deriv += l2 / 2.0 - u * l3 / 3.0 + u * u * l4 / 8.0;
    } else {
        const cplx e = std::exp(-ul);
        value += (e - 1.0) / u;
        deriv += (-lx * e * u - (e - 1.0)) / (u * u);
    }

    value += 0.5 * x_neg_s;
    deriv += -0.5 * lx * x_neg_s;

    // Bernoulli corrections: B_2k/(2k)! * s(s+1)...(s+2k-2) * X^{-s-2k+1}
    cplx poly = s;
    cplx poly_d = 1.0;
    double x_pow = 1.0 / big_x;  // X^{-(2k-1)}
    for (std::size_t k = 0; k < kBernoulliOverFactorial.size(); ++k) {
        const cplx base = kBernoulliOverFactorial[k] * x_pow * x_neg_s;
        value += base * poly;
        deriv += base * (poly_d - lx * poly);
        for (int j = 0; j < 2; ++j) {
            const cplx g = s + static_cast<double>(2 * k + 1 + j);
            poly_d = poly_d * g + poly;
            poly *= g;
        }
        x_pow /= big_x * big_x;
    }
    return {value, deriv};
}

cplx hurwitz_zeta(cplx s, double a, int cutoff) {
    if (s == cplx(1.0, 0.0)) throw DomainError("hurwitz_zeta: pole at s = 1");
    return hurwitz_zeta_regular(s, a, cutoff).value + 1.0 / (s - 1.0);
}

cplx zeta(cplx s, int cutoff) {
    return hurwitz_zeta(s, 1.0, cutoff);
}

cplx log_gamma(cplx z) {
    if (!(z.real() > 0.0)) throw DomainError("log_gamma: requires Re z > 0");
    cplx shift = 0.0;
    while (z.real() < 10.0) {
        shift += std::log(z);
        z += 1.0;
    }
    const cplx inv = 1.0 / z;
    const cplx inv2 = inv * inv;
    cplx series = 0.0;
    cplx p = inv;
    for (std::size_t k = 0; k < kBernoulli.size(); ++k) {
        const double n = 2.0 * static_cast<double>(k + 1);
        series += kBernoulli[k] / (n * (n - 1.0)) * p;
        p *= inv2;
    }
    return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * std::numbers::pi) + series - shift;
}

double li(double x) {
    if (!(x >= 2.0)) throw DomainError("li: domain restricted to x >= 2");
    const double lx = std::log(x);
    if (x > 1e15) {
        // li(x) ~ x/log x * sum k!/log^k x, truncated at the smallest term
        double term = 1.0;
        double sum = 1.0;
        for (int k = 1; k < 60; ++k) {
            const double next = term * k / lx;
            if (next > term) break;
            term = next;
            sum += term;
        }
        return x / lx * sum;
    }
    // Ramanujan's series
    double sum = 0.0;
    double inner = 0.0;
    double factor = 1.0;  // (log x)^n / (n! 2^{n-1}) with sign
    for (int n = 1; n < 400; ++n) {
        factor *= (n == 1 ? lx : -lx / (2.0 * n));
        if ((n - 1) % 2 == 0) inner += 1.0 / n;  // adds 1/(2k+1) with 2k+1 = n
        const double term = factor * inner;
        sum += term;
        if (n > 2 * lx && std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return kEulerGamma + std::log(lx) + std::sqrt(x) * sum;
}

}  // namespace signrace
