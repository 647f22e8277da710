#pragma once

#include <functional>
#include <span>
#include <vector>

namespace signrace {

struct GaussLegendreRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

/// n-point rule, cached per n.
const GaussLegendreRule& gauss_legendre(int n);

/// Composite Gauss-Legendre: [lo, hi] split into pieces no wider than
/// `width`, `points` nodes on each.
double integrate_composite(const std::function<double(double)>& f, double lo, double hi,
                           double width = 1e-3, int points = 32);

/// Node and weight lists for the same composite rule, for callers that
/// evaluate the integrand in a batch.
void composite_nodes(double lo, double hi, double width, int points,
                     std::vector<double>& x, std::vector<double>& w);

}  // namespace signrace
