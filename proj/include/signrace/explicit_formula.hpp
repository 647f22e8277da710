#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "signrace/characters.hpp"
#include "signrace/l_functions.hpp"
#include "signrace/report.hpp"
#include "signrace/zeta_zeros.hpp"

namespace signrace {

/// Truncated oscillation sum  Delta_T(t) = sum_{|gamma| < T} e^{i t gamma} / rho
/// over one zero set (zeta, mirrored, or a single L-function).
///
/// Evaluation is direct summation, O(#zeros) per t.  `cached` memoises by t and
/// is safe to call from several threads.
class DeltaSeries {
public:
    static DeltaSeries zeta(const ZeroList& zeros, double T);
    static DeltaSeries character(const LZeroList& zeros, double T);

    std::complex<double> operator()(double t) const;
    std::complex<double> cached(double t) const;

    /// Values on a t-grid; OpenMP parallel and serial reference.
    std::vector<std::complex<double>> sweep(std::span<const double> ts) const;
    std::vector<std::complex<double>> sweep_serial(std::span<const double> ts) const;

    double height() const noexcept { return T_; }
    /// All ordinates with |gamma| < T, ascending.
    std::span<const double> ordinates() const noexcept { return gammas_; }
    /// sum 1/|rho|, an upper bound for |Delta_T(t)|.
    double abs_bound() const;

private:
    DeltaSeries(std::vector<double> gammas, double T);

    struct Cache;
    std::vector<double> gammas_;
    double T_ = 0.0;
    std::shared_ptr<Cache> cache_;
};

std::complex<double> delta_T(double t, const ZeroList& zeros, double T);

/// psi(x) = x - sqrt(x) Delta_T(log x) - log 2 pi - (1/2) log(1 - x^-2).
double psi_via_zeros(double x, const ZeroList& zeros, double T);

/// Delta(t) on 0 < t < log 2, where psi(e^t) = 0.
double small_t_closed_form(double t);

/// sqrt((1/(hi-lo)) int_lo^hi |Delta_T(t) - small_t_closed_form(t)|^2 dt).
double small_t_l2_distance(const ZeroList& zeros, double T, double lo = 0.05, double hi = 0.65);

/// int_b^a |Delta_{T2}(t) - Delta_{T1}(t)|^2 dt by composite Gauss-Legendre.
double l2_difference_quadrature(const DeltaSeries& lower, const DeltaSeries& upper, double a, double b);
/// The same integral as a double sum over T1 < |gamma| < T2.  For zeta the
/// kernel pairs gamma_1 + gamma_2 with weights 1/(rho_1 rho_2); for a single
/// L-function (no conjugate symmetry) it pairs gamma_1 - gamma_2 with
/// 1/(rho_1 conj(rho_2)).
double l2_double_sum_zeta(const ZeroList& zeros, double T1, double T2, double a, double b);
double l2_double_sum_character(const LZeroList& zeros, double T1, double T2, double a, double b);

/// Passes when both evaluations agree to 1e-8 and sit under
/// (2/9) log^3(qT1)/T1, with q = 1 for zeta.
Report l2_truncation_check(double a, double b, const ZeroList& zeros, double T1, double T2);
Report l2_truncation_check(double a, double b, const LZeroList& zeros, double T1, double T2);

/// Per-character data of the explicit formula
///   Psi(x, chi) = E x - sqrt(x) sum_rho x^{i gamma}/rho - d log x - R(x, chi) + B.
struct CharacterConstants {
    int E = 0;
    int d = 0;
    int parity = 0;
    std::int64_t conductor = 0;
    std::complex<double> B;
    std::complex<double> log_derivative_conj;  // L'/L(1, conj chi*), 0 for chi_0
};

struct ExplicitFormulaConstants {
    /// zeta'/zeta(0) = log 2 pi.
    double zeta_log_deriv_at_0 = 0.0;
    std::vector<CharacterConstants> characters;

    static ExplicitFormulaConstants build(const CharacterTable& table);
};

/// R(x, chi): (1/2) log(1 - x^-2), plus log(x/(x+1)) for odd chi.
double remainder_R(double x, int parity);

/// Truncated right-hand side of the explicit formula for Psi(x, chi).  The
/// principal character takes the zeta zeros and constant -log 2 pi; imprimitive
/// characters use their inducing character.  Both add back the exact prime
/// powers dividing q that the primitive formula counts.
std::complex<double> psi_chi_via_zeros(double x, const CharacterTable& table, std::size_t k,
                                       const LZeroList& zeros, const ExplicitFormulaConstants& constants,
                                       double T);

/// Delta(t, q, a) = (1/phi(q)) sum_chi chi(a) Delta_T(t, chi).  zero_data[k]
/// belongs to character k; entry 0 is the zeta zero list.
std::complex<double> delta_qa(double t, const CharacterTable& table, std::int64_t a,
                              std::span<const LZeroList> zero_data, double T);

/// Truncated psi(x, q, a) = (1/phi(q)) sum_chi conj(chi(a)) Psi(x, chi).
double psi_qa_via_zeros(double x, const CharacterTable& table, std::int64_t a,
                        std::span<const LZeroList> zero_data, const ExplicitFormulaConstants& constants, double T);

/// Pi(x) - li x against (psi(x) - x)/log x, and pi(x) - Pi(x) against
/// -(1/2) li(sqrt x), from sieve data.  Envelopes use the zero bracket.
Report lemma6_chain_check(double x, const ZeroList& zeros);

/// int_0^x Delta_T(t, chi) + Delta_T(-t, chi) dt against 53 x log q.
Report lemma12_integral_check(double x, const LZeroList& zeros);

/// For a = 1: Delta_T(t, q, 1) e^{t/2} - (log q - (1/2) log(1 - e^{-2t})) over
/// the grid; otherwise max |Delta_T(t, q, a)| against 3.
Report lemma11_neighborhood_check(const CharacterTable& table, std::int64_t a, std::span<const double> ts,
                                  std::span<const LZeroList> zero_data, double T);

}  // namespace signrace
