#include "signrace/race.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include "signrace/characters.hpp"
#include "signrace/errors.hpp"
#include "signrace/explicit_formula.hpp"
#include "signrace/sieve.hpp"
#include "signrace/special.hpp"

namespace signrace {

namespace {

constexpr double kGridRatio = 1.01;

}  // namespace

nlohmann::json RaceReport::to_json() const {
    nlohmann::json crossings_json = nlohmann::json::array();
    for (const auto& c : crossings) crossings_json.push_back({{"x", c.x}, {"direction", c.direction}});
    nlohmann::json lead = nlohmann::json::object();
    for (std::size_t j = 0; j < residues.size(); ++j) lead[std::to_string(residues[j])] = lead_fraction[j];
    return {{"q", modulus},
            {"x_max", x_max},
            {"V", crossings.size()},
            {"first_positive", first_positive},
            {"crossings", crossings_json},
            {"lead_fraction", lead},
            {"tie_fraction", tie_fraction}};
}

RaceReport race_scan(std::int64_t q, std::int64_t x_max) {
    if (q < 3) throw DomainError("race_scan: q must be >= 3");
    if (x_max > kSieveCapacity) throw CapacityError("race_scan: x_max exceeds capacity 1e10");

    std::vector<int> column(static_cast<std::size_t>(q), -1);
    RaceReport r;
    r.modulus = q;
    r.x_max = x_max;
    for (std::int64_t a = 1; a < q; ++a) {
        if (gcd64(a, q) == 1) {
            column[static_cast<std::size_t>(a)] = static_cast<int>(r.residues.size());
            r.residues.push_back(a);
        }
    }
    const std::size_t width = r.residues.size();
    std::vector<std::int64_t> count(width, 0);
    std::vector<std::int64_t> lead_length(width, 0);
    std::int64_t tie_length = 0;

    std::int64_t max_other = 0;   // max over a != 1
    std::int64_t max_all = 0;
    std::size_t n_leaders = width;  // residues attaining max_all
    std::size_t leader = 0;
    int last_sign = 0;
    std::int64_t state_from = 2;

    const auto close_state = [&](std::int64_t until) {
        if (until <= state_from) return;
        if (n_leaders == 1) {
            lead_length[leader] += until - state_from;
        } else {
            tie_length += until - state_from;
        }
        state_from = until;
    };

    for_each_prime_block(x_max, [&](std::span<const std::int64_t> primes) {
        for (std::int64_t p : primes) {
            const int col = column[static_cast<std::size_t>(p % q)];
            if (col < 0) continue;
            close_state(p);
            const auto c = static_cast<std::size_t>(col);
            const std::int64_t v = ++count[c];
            if (v > max_all) {
                max_all = v;
                n_leaders = 1;
                leader = c;
            } else if (v == max_all) {
                ++n_leaders;
            }
            if (c != 0) max_other = std::max(max_other, v);
            const std::int64_t D = count[0] - max_other;
            const int sign = D > 0 ? 1 : (D < 0 ? -1 : 0);
            if (sign == 0) continue;
            if (sign > 0 && r.first_positive < 0) r.first_positive = p;
            if (last_sign != 0 && sign != last_sign) r.crossings.push_back({p, sign});
            last_sign = sign;
        }
    });
    close_state(x_max + 1);

    const double total = x_max >= 2 ? static_cast<double>(x_max - 1) : 1.0;
    r.lead_fraction.resize(width);
    for (std::size_t j = 0; j < width; ++j) r.lead_fraction[j] = static_cast<double>(lead_length[j]) / total;
    r.tie_fraction = x_max >= 2 ? static_cast<double>(tie_length) / total : 0.0;

    if (x_max >= 2) {
        auto grid = geometric_checkpoints(2, x_max, kGridRatio);
        for (const auto& c : r.crossings) grid.push_back(c.x);
        std::sort(grid.begin(), grid.end());
        grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
        r.checkpoints = grid;
        r.V.reserve(grid.size());
        std::size_t k = 0;
        for (std::int64_t x : grid) {
            while (k < r.crossings.size() && r.crossings[k].x <= x) ++k;
            r.V.push_back(static_cast<std::int64_t>(k));
        }
    }
    return r;
}

void write_crossings_csv(std::ostream& out, const RaceReport& r) {
    out << "x,direction\n";
    for (const auto& c : r.crossings) out << c.x << ',' << (c.direction > 0 ? "+1" : "-1") << '\n';
}

void write_v_csv(std::ostream& out, const RaceReport& r) {
    out << "x,V\n";
    for (std::size_t i = 0; i < r.checkpoints.size(); ++i) out << r.checkpoints[i] << ',' << r.V[i] << '\n';
}

Report pi_li_race_scan(std::int64_t x_max, const ZeroList* zeros, double T) {
    if (x_max > kSieveCapacity) throw CapacityError("pi_li_race_scan: x_max exceeds capacity 1e10");
    Report r;
    r.check = "pi_li_race";
    r.params = {{"x_max", x_max}};
    r.status = Status::ReportOnly;
    r.bound = {{"note", "no sign change of pi - li is expected below e_3(16.7)"}};
    if (x_max < 2) {
        r.measured = {{"checkpoints", 0}};
        return r;
    }
    const auto grid = geometric_checkpoints(2, x_max, kGridRatio);
    const auto c = census(3, x_max, grid);

    double min_gap = std::numeric_limits<double>::infinity();
    std::int64_t min_at = 0;
    double psi_lo = std::numeric_limits<double>::infinity();
    double psi_hi = -std::numeric_limits<double>::infinity();
    std::int64_t psi_lo_at = 0;
    std::int64_t psi_hi_at = 0;
    std::size_t positive = 0;
    std::size_t negative = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = static_cast<double>(grid[i]);
        const double gap = li(x) - static_cast<double>(c.pi_total[i]);
        if (gap < min_gap) {
            min_gap = gap;
            min_at = grid[i];
        }
        const double e = (c.psi_total[i] - x) / std::sqrt(x);
        if (e < psi_lo) {
            psi_lo = e;
            psi_lo_at = grid[i];
        }
        if (e > psi_hi) {
            psi_hi = e;
            psi_hi_at = grid[i];
        }
        if (e > 0) ++positive;
        if (e < 0) ++negative;
    }
    r.measured = {{"checkpoints", grid.size()},
                  {"li_minus_pi_min", min_gap},
                  {"li_minus_pi_min_at", min_at},
                  {"li_exceeds_pi_everywhere", min_gap > 0.0},
                  {"psi_excess_min", psi_lo},
                  {"psi_excess_min_at", psi_lo_at},
                  {"psi_excess_max", psi_hi},
                  {"psi_excess_max_at", psi_hi_at},
                  {"psi_excess_positive_count", positive},
                  {"psi_excess_negative_count", negative}};

    if (zeros != nullptr) {
        // (psi(x) - x)/sqrt x  ~  -Re Delta_T(log x) away from prime powers.
        const auto series = DeltaSeries::zeta(*zeros, T > 0.0 ? T : zeros->complete_to);
        std::vector<double> ts;
        for (std::int64_t x : grid) {
            if (x >= 10) ts.push_back(std::log(static_cast<double>(x) + 0.5));
        }
        const auto d = series.sweep(ts);
        double acc = 0.0;
        std::size_t n = 0;
        std::size_t offset = grid.size() - ts.size();
        for (std::size_t i = 0; i < ts.size(); ++i) {
            const double x = static_cast<double>(grid[offset + i]) + 0.5;
            const double actual = (c.psi_total[offset + i] - x) / std::sqrt(x);
            const double predicted = -d[i].real() - (std::log(2.0 * std::numbers::pi) +
                                                     0.5 * std::log1p(-1.0 / (x * x))) / std::sqrt(x);
            acc += (actual - predicted) * (actual - predicted);
            ++n;
        }
        r.params["T"] = series.height();
        r.measured["zero_prediction_rms"] = n > 0 ? std::sqrt(acc / static_cast<double>(n)) : 0.0;
    }
    return r;
}

Report psi_race_scan(std::int64_t q, std::int64_t x_max) {
    if (q < 3) throw DomainError("psi_race_scan: q must be >= 3");
    if (x_max > kSieveCapacity) throw CapacityError("psi_race_scan: x_max exceeds capacity 1e10");
    const double phi = static_cast<double>(euler_phi(q));
    const double f = static_cast<double>(count_square_roots_of_unity(q));
    const double upper = 7.0 * f / phi;
    const double lower = -1.0 / phi;
    Report r;
    r.check = "psi_race";
    r.params = {{"q", q}, {"x_max", x_max}};
    r.bound = {{"7 f(q)/phi(q)", upper}, {"-1/phi(q)", lower}};
    r.status = Status::ReportOnly;
    nlohmann::json per = nlohmann::json::object();
    if (x_max < 3) {
        for (std::int64_t a = 2; a < q; ++a) {
            if (gcd64(a, q) == 1) {
                per[std::to_string(a)] = {{"max", 0.0}, {"min", 0.0}, {"above_upper", 0}, {"below_lower", 0}};
            }
        }
        r.measured = {{"checkpoints", 0}, {"residues", per}};
        return r;
    }
    const auto grid = geometric_checkpoints(2, x_max, kGridRatio);
    const auto c = census(q, x_max, grid);
    const int one = c.column(1);
    for (std::size_t j = 0; j < c.width(); ++j) {
        if (static_cast<int>(j) == one) continue;
        double hi = -std::numeric_limits<double>::infinity();
        double lo = std::numeric_limits<double>::infinity();
        std::int64_t hi_at = 0;
        std::int64_t lo_at = 0;
        std::size_t above = 0;
        std::size_t below = 0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double v = (c.psi_at(i, static_cast<std::size_t>(one)) - c.psi_at(i, j)) /
                             std::sqrt(static_cast<double>(grid[i]));
            if (v > hi) {
                hi = v;
                hi_at = grid[i];
            }
            if (v < lo) {
                lo = v;
                lo_at = grid[i];
            }
            if (v > upper) ++above;
            if (v < lower) ++below;
        }
        per[std::to_string(c.residues[j])] = {{"max", hi},         {"max_at", hi_at},       {"min", lo},
                                              {"min_at", lo_at},   {"above_upper", above}, {"below_lower", below},
                                              {"final", (c.psi_at(grid.size() - 1, static_cast<std::size_t>(one)) -
                                                         c.psi_at(grid.size() - 1, j)) /
                                                            std::sqrt(static_cast<double>(grid.back()))}};
    }
    r.measured = {{"checkpoints", grid.size()}, {"residues", per}};
    return r;
}

}  // namespace signrace
