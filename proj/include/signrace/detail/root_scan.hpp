#pragma once

#include <functional>
#include <span>
#include <vector>

namespace signrace::detail {

/// f evaluated on every grid point, in parallel.
std::vector<double> evaluate_grid(const std::function<double(double)>& f, std::span<const double> grid);

/// Indices i with a strict sign change between values[i] and values[i+1].
std::vector<std::size_t> sign_changes(std::span<const double> values);

/// Bisection of a bracketed sign change down to width `tol`.
double bisect(const std::function<double(double)>& f, double a, double b, double fa, double tol);

/// Roots of f in every bracket [grid[i], grid[i+1]] with a sign change.
std::vector<double> refine_roots(const std::function<double(double)>& f, std::span<const double> grid,
                                 std::span<const double> values, double tol);

/// Grid from lo to hi with spacing at most `step`, endpoints included.
std::vector<double> uniform_grid(double lo, double hi, double step);

}  // namespace signrace::detail
