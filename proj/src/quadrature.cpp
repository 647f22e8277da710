#include "signrace/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace signrace {

namespace {

GaussLegendreRule make_rule(int n) {
    GaussLegendreRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

}  // namespace

const GaussLegendreRule& gauss_legendre(int n) {
    static std::mutex mu;
    static std::map<int, GaussLegendreRule> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, make_rule(n)).first;
    return it->second;
}

void composite_nodes(double lo, double hi, double width, int points,
                     std::vector<double>& x, std::vector<double>& w) {
    x.clear();
    w.clear();
    if (!(hi > lo)) return;
    const auto& rule = gauss_legendre(points);
    const auto pieces = static_cast<long>(std::ceil((hi - lo) / width - 1e-12));
    const double h = (hi - lo) / static_cast<double>(pieces);
    x.reserve(pieces * points);
    w.reserve(pieces * points);
    for (long j = 0; j < pieces; ++j) {
        const double mid = lo + (j + 0.5) * h;
        for (int i = 0; i < points; ++i) {
            x.push_back(mid + 0.5 * h * rule.nodes[i]);
            w.push_back(0.5 * h * rule.weights[i]);
        }
    }
}

double integrate_composite(const std::function<double(double)>& f, double lo, double hi,
                           double width, int points) {
    std::vector<double> x, w;
    composite_nodes(lo, hi, width, points, x, w);
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) sum += w[i] * f(x[i]);
    return sum;
}

}  // namespace signrace
