#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "json.hpp"
#include "signrace/report.hpp"
#include "signrace/zeta_zeros.hpp"

namespace signrace {

/// A sign change of D(x) = pi(x,q,1) - max_{a != 1} pi(x,q,a), located at the
/// prime where the new sign is first reached.  direction is +1 when D turns
/// positive.
struct Crossing {
    std::int64_t x;
    int direction;
    bool operator==(const Crossing&) const = default;
};

struct RaceReport {
    std::int64_t modulus = 0;
    std::int64_t x_max = 0;
    std::vector<Crossing> crossings;
    /// V(x) sampled on a ratio-1.01 grid plus every crossing point.
    std::vector<std::int64_t> checkpoints;
    std::vector<std::int64_t> V;
    /// Fraction of integers 2 <= x <= x_max at which residues[j] is the sole
    /// leader; tie_fraction covers the rest.
    std::vector<std::int64_t> residues;
    std::vector<double> lead_fraction;
    double tie_fraction = 0.0;

    /// First x with D(x) > 0, or -1.
    std::int64_t first_positive = -1;

    nlohmann::json to_json() const;
};

/// Exact scan over every prime up to x_max (q >= 3, x_max <= 1e10).  Runs of
/// D = 0 keep the preceding sign.
RaceReport race_scan(std::int64_t q, std::int64_t x_max);

/// Header `x,direction`.
void write_crossings_csv(std::ostream& out, const RaceReport& r);
/// Header `x,V`.
void write_v_csv(std::ostream& out, const RaceReport& r);

/// li(x) - pi(x) and (psi(x) - x)/sqrt x on a ratio-1.01 grid.  A property
/// scan: no crossing of pi - li exists at this scale.  With zero data the
/// grid also carries the truncated prediction -Re Delta_T(log x).
Report pi_li_race_scan(std::int64_t x_max, const ZeroList* zeros = nullptr, double T = 0.0);

/// (psi(x,q,1) - psi(x,q,a))/sqrt x per residue against 7 f(q)/phi(q) and
/// -1/phi(q), on a ratio-1.01 grid.
Report psi_race_scan(std::int64_t q, std::int64_t x_max);

}  // namespace signrace
