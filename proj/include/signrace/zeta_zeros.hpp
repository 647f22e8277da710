#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "signrace/report.hpp"

namespace signrace {

enum class ZeroSource { Computed, Loaded };

/// Positive ordinates of nontrivial zeros 1/2 + i gamma, ascending, complete
/// up to `complete_to`.
struct ZeroList {
    std::vector<double> gammas;
    double complete_to = 0.0;
    ZeroSource source = ZeroSource::Computed;

    /// Zeros with 0 < gamma < T.
    std::size_t count_below(double T) const;
};

inline constexpr double kZetaHeightCapacity = 1e4;

/// Riemann-Siegel theta function (asymptotic series), t >= 10.
double rs_theta(double t);

/// Hardy Z by the Riemann-Siegel main sum plus `corrections` + 1 remainder
/// terms C_0..C_corrections (corrections <= 4).  Valid for t >= 10; accurate to
/// 1e-6 only above t ~ 40, see hardy_z.
double riemann_siegel_z(double t, int corrections = 4);

/// Hardy Z(t) = exp(i theta(t)) zeta(1/2 + it) to about 1e-6 on [10, 1e4]:
/// Riemann-Siegel from t = 50, Euler-Maclaurin below.
double hardy_z(double t);
inline constexpr double kRiemannSiegelFrom = 50.0;

/// Gram point g_n: theta(g_n) = n pi (n >= -1).
double gram_point(long n);

/// theta(T)/pi + 1 + S(T) with S(T) tracked by continuous variation of
/// arg zeta along [3 + iT, 1/2 + iT].  An integer when T is not an ordinate.
double argument_principle_count(double T);

struct ZeroSearchOptions {
    double step = 0.05;
    double tolerance = 1e-9;
    double block = 50.0;
    int max_refinements = 3;
};

/// All gamma in (0, T], certified block by block against the argument
/// principle.  Throws CertificationError naming the interval that would not
/// reconcile, CapacityError above 1e4, DomainError below 10.
ZeroList compute_zeros(double T, const ZeroSearchOptions& opts = {});

/// N(T) < T log T / 6 and N(T+1) - N(T) < log T.
Report check_lemma3(const ZeroList& zeros, double T);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool contains(double x) const noexcept { return lo <= x && x <= hi; }
    double width() const noexcept { return hi - lo; }
};

/// Bracket for sum over all zeros (both signs) of 1/|rho|^2.  The tail above
/// complete_to is bounded by partial summation against N(t) < t log t / 6.
Interval reciprocal_square_sum(const ZeroList& zeros);

/// 2 + C - log pi - 2 log 2.
double reciprocal_square_sum_exact();

void save_zeros(std::ostream& out, const ZeroList& zeros);
ZeroList load_zeros(std::istream& in);
ZeroList load_zeros(const std::filesystem::path& path);

}  // namespace signrace
