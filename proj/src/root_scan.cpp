#include "signrace/detail/root_scan.hpp"

#include <cmath>

namespace signrace::detail {

std::vector<double> evaluate_grid(const std::function<double(double)>& f, std::span<const double> grid) {
    std::vector<double> v(grid.size());
    const auto n = static_cast<long>(grid.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i) v[i] = f(grid[i]);
    return v;
}

std::vector<std::size_t> sign_changes(std::span<const double> values) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
        if ((values[i] < 0.0 && values[i + 1] > 0.0) || (values[i] > 0.0 && values[i + 1] < 0.0)) {
            out.push_back(i);
        }
    }
    return out;
}

double bisect(const std::function<double(double)>& f, double a, double b, double fa, double tol) {
    while (b - a > tol) {
        const double m = 0.5 * (a + b);
        if (m <= a || m >= b) break;
        const double fm = f(m);
        if (fm == 0.0) return m;
        if ((fm < 0.0) == (fa < 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

std::vector<double> refine_roots(const std::function<double(double)>& f, std::span<const double> grid,
                                 std::span<const double> values, double tol) {
    const auto idx = sign_changes(values);
    std::vector<double> roots(idx.size());
    const auto n = static_cast<long>(idx.size());
#pragma omp parallel for schedule(dynamic, 4)
    for (long i = 0; i < n; ++i) {
        const std::size_t j = idx[i];
        roots[i] = bisect(f, grid[j], grid[j + 1], values[j], tol);
    }
    return roots;
}

std::vector<double> uniform_grid(double lo, double hi, double step) {
    const auto n = static_cast<long>(std::ceil((hi - lo) / step - 1e-12));
    std::vector<double> g;
    g.reserve(static_cast<std::size_t>(n) + 1);
    for (long i = 0; i < n; ++i) g.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n));
    g.push_back(hi);
    return g;
}

}  // namespace signrace::detail
