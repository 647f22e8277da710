#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "signrace/characters.hpp"
#include "signrace/report.hpp"
#include "signrace/zeta_zeros.hpp"

namespace signrace {

inline constexpr std::int64_t kLModulusCapacity = 50;
inline constexpr double kLHeightCapacity = 200.0;

/// Zeros 1/2 + i gamma of L(s, chi) for chi = table[chi], split by the sign of
/// gamma.  gammas_pos ascends, gammas_neg descends (both move away from 0).
struct LZeroList {
    std::int64_t q = 0;
    std::size_t chi = 0;
    std::vector<double> gammas_pos;
    std::vector<double> gammas_neg;
    double complete_to = 0.0;
    ZeroSource source = ZeroSource::Computed;

    /// Zeros with 0 < gamma < T and with -T < gamma < 0.
    std::size_t count_pos(double T) const;
    std::size_t count_neg(double T) const;
};

/// Zero data for the principal character mod q: the zeros of zeta, mirrored.
LZeroList principal_zero_list(std::int64_t q, const ZeroList& zeta_zeros);

/// The primitive character inducing table[k].
struct InducingCharacter {
    CharacterTable table;
    std::size_t index;
    std::int64_t conductor() const noexcept { return table.modulus(); }
};
/// Throws DomainError for the principal character (conductor 1).
InducingCharacter inducing_character(const CharacterTable& table, std::size_t k);

struct LValue {
    std::complex<double> value;
    std::complex<double> derivative;
};

/// L(s, chi) and L'(s, chi) through the Hurwitz representation
/// L(s, chi) = q^-s sum_a chi(a) zeta(s, a/q).  For non-principal chi the pole
/// parts cancel and s = 1 is allowed.
LValue l_eval_with_derivative(std::complex<double> s, const CharacterTable& table, std::size_t k);
std::complex<double> l_eval(std::complex<double> s, const CharacterTable& table, std::size_t k);

/// Gauss sum tau(chi) by direct summation.
std::complex<double> gauss_sum(const CharacterTable& table, std::size_t k);
/// epsilon(chi) = tau(chi) / (i^a sqrt q) for primitive chi; |epsilon| = 1.
std::complex<double> root_number(const CharacterTable& table, std::size_t k);

/// exp(i theta_chi(t)) L(1/2 + it, chi) for primitive chi; real up to rounding.
std::complex<double> rotated_l_complex(double t, const CharacterTable& table, std::size_t k);
/// Real part of rotated_l_complex: the function whose sign changes are the zeros.
double rotated_l(double t, const CharacterTable& table, std::size_t k);

/// Number of zeros with 0 < gamma < T by the argument principle (primitive chi).
double l_argument_count(double T, const CharacterTable& table, std::size_t k);

struct LZeroSearchOptions {
    double step = 0.02;
    double tolerance = 1e-9;
    double block = 25.0;
    int max_refinements = 3;
};

/// All zeros with |gamma| <= T of a non-principal character mod q <= 50,
/// T <= 200.  Imprimitive characters share the zeros of their inducing
/// character.  Each block is certified against the argument principle.
LZeroList compute_l_zeros(const CharacterTable& table, std::size_t k, double T,
                          const LZeroSearchOptions& opts = {});

/// L'/L(1, chi) for non-principal chi.
std::complex<double> l_log_derivative_at_1(const CharacterTable& table, std::size_t k);

/// N(T, chi) = N+ + N- against (T/pi) log(qT/2pi) - T/pi, and |N+ - N-|
/// against (5/4) log qT.  Measured-vs-formula only.
Report check_lemma8(const LZeroList& zeros, double T);

/// Bracket of sum over all zeros of 1/|rho|^2 with the tail above complete_to
/// bounded through the envelope N(t, chi) < (t/pi) log(qt/2pi) - t/pi + (1/2.1) log qt + 30.
Interval l_reciprocal_square_sum(const LZeroList& zeros);
/// Upper end of the bracket against 13 log q.
Report check_lemma8_reciprocal(const LZeroList& zeros);

/// |sum_chi conj(chi(a)) L'/L(1, chi)| against phi(q) Lambda(a)/a, with the
/// principal term replaced by its finite part C + sum_{p|q} log p/(p-1).
Report check_lemma10(std::int64_t q, std::int64_t a);

/// The sum itself (principal term by its finite part).
std::complex<double> lemma10_sum(const CharacterTable& table, std::int64_t a);

void save_l_zeros(std::ostream& out, const LZeroList& zeros);
LZeroList load_l_zeros(std::istream& in);
LZeroList load_l_zeros(const std::filesystem::path& path);

}  // namespace signrace
