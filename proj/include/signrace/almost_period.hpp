#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "json.hpp"

namespace signrace {

inline constexpr std::size_t kMaxAlmostPeriodDimension = 8;
inline constexpr double kMaxAlmostPeriodSteps = 1e10;

enum class AlmostPeriodStrategy {
    /// Scan s on a grid of step eps/(4 sum t_i) and solve each candidate
    /// window exactly; returns the smallest valid s in every separation window.
    GridScan,
    /// Bucket the torus images of s = j * min_gap in cells of side
    /// eps/(2 sqrt n); two points in one cell give a valid difference.  Falls
    /// back to GridScan when the differences run past M + 1.
    Pigeonhole,
};

struct AlmostPeriodSet {
    std::vector<double> freqs;
    double epsilon = 0.0;
    std::size_t N = 0;
    double min_gap = 1.0;
    std::vector<double> s;
    double M = 0.0;
    double grid_step = 0.0;

    nlohmann::json to_json() const;
};

/// Euclidean distance from v to the nearest lattice point.
double torus_norm(std::span<const double> v);

/// N 2^n Gamma(n/2) / (pi^{n/2} eps^n).
double almost_period_bound(std::size_t n, double epsilon, std::size_t N);

/// N reals 1 < s_1 < ... < s_N <= M + 1, s_{i+1} >= s_i + min_gap, with
/// torus_norm(s_i * freqs) < eps.  Throws CapacityError for n > 8 or when
/// the scan would exceed 1e10 grid steps, NotFoundError when M + 1 is passed.
AlmostPeriodSet find_almost_periods(std::span<const double> freqs, double epsilon, std::size_t N,
                                    double min_gap = 1.0,
                                    AlmostPeriodStrategy strategy = AlmostPeriodStrategy::GridScan);

}  // namespace signrace
