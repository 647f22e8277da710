#pragma once

#include <complex>

namespace signrace {

using cplx = std::complex<double>;

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

/// Euler-Maclaurin cutoff used when none is given: max(20, 2 |Im s|).
int default_em_cutoff(cplx s);

/// zeta(s, a) - 1/(s - 1) and its s-derivative, by Euler-Maclaurin with
/// `cutoff` direct terms and 8 Bernoulli corrections.  The subtracted pole
/// makes the value finite at s = 1, which is where Dirichlet L-functions of
/// non-principal characters need it.
struct HurwitzValue {
    cplx value;
    cplx derivative;
};
HurwitzValue hurwitz_zeta_regular(cplx s, double a, int cutoff = 0);

/// zeta(s, a) for s != 1.
cplx hurwitz_zeta(cplx s, double a, int cutoff = 0);

/// Riemann zeta for s != 1.
cplx zeta(cplx s, int cutoff = 0);

/// Continuous branch of log Gamma(z) on Re z > 0.
cplx log_gamma(cplx z);

/// Logarithmic integral li(x) for x >= 2.
double li(double x);

}  // namespace signrace
