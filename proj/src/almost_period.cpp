#include "signrace/almost_period.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include "signrace/errors.hpp"

namespace signrace {

namespace {

constexpr std::int64_t kBlockSteps = 1 << 15;
constexpr int kBlocksPerWave = 32;

// Open interval (lo, hi) on which sum (u t_i - k_i)^2 < eps^2 for one fixed k,
// with the minimiser `center`.
struct Window {
    double lo;
    double hi;
    double center;
};

double scaled_norm(double u, std::span<const double> t) {
    double acc = 0.0;
    for (double ti : t) {
        const double x = u * ti;
        const double d = x - std::nearbyint(x);
        acc += d * d;
    }
    return std::sqrt(acc);
}

// All windows meeting [s, s + step] (step moves the image by at most eps/4).
void windows_at(double s, std::span<const double> t, double eps, double A, std::vector<Window>& out) {
    const std::size_t n = t.size();
    const double reach = 1.25 * eps;
    // candidate offsets e_i = s t_i - k_i with |e_i| < reach
    std::vector<std::array<double, 2>> cand(n);
    std::vector<int> count(n);
    double base = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = s * t[i];
        const double k = std::nearbyint(x);
        const double e = x - k;
        base += e * e;
        cand[i][0] = e;
        count[i] = 1;
        const double other = e > 0 ? e - 1.0 : e + 1.0;
        if (std::abs(other) < reach) {
            cand[i][1] = other;
            count[i] = 2;
        }
    }
    if (base >= reach * reach) return;
    std::vector<int> pick(n, 0);
    for (;;) {
        double E = 0.0;
        double F = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double e = cand[i][pick[i]];
            E += e * t[i];
            F += e * e;
        }
        // Q(s + v) = A v^2 + 2 E v + F
        const double v0 = -E / A;
        const double qmin = F - E * E / A;
        const double room = eps * eps - qmin;
        if (room > 0.0) {
            const double r = std::sqrt(room / A);
            out.push_back({s + v0 - r, s + v0 + r, s + v0});
        }
        std::size_t i = 0;
        while (i < n && ++pick[i] == count[i]) pick[i++] = 0;
        if (i == n) break;
    }
}

// Smallest u >= from inside w with a verified norm below eps, if any.
bool first_valid(const Window& w, double from, std::span<const double> t, double eps, double& u) {
    const double limit = eps * (1.0 - 1e-12);
    double x = std::max(from, std::nextafter(w.lo, std::numeric_limits<double>::infinity()));
    if (x >= w.hi) return false;
    if (scaled_norm(x, t) < limit) {
        u = x;
        return true;
    }
    if (x >= w.center || scaled_norm(w.center, t) >= limit) return false;
    double bad = x;
    double good = w.center;
    for (int it = 0; it < 200 && good - bad > 4.0 * std::numeric_limits<double>::epsilon() * std::abs(good);
         ++it) {
        const double mid = 0.5 * (bad + good);
        if (scaled_norm(mid, t) < limit) {
            good = mid;
        } else {
            bad = mid;
        }
    }
    u = good;
    return true;
}

void validate(std::span<const double> freqs, double epsilon, std::size_t N, double min_gap) {
    if (freqs.empty()) throw DomainError("find_almost_periods: no frequencies");
    if (freqs.size() > kMaxAlmostPeriodDimension) {
        throw CapacityError("find_almost_periods: at most 8 frequencies");
    }
    for (double f : freqs) {
        if (!(f > 0.0) || !std::isfinite(f)) throw DomainError("find_almost_periods: frequencies must be positive");
    }
    if (!(epsilon > 0.0 && epsilon < 0.5)) throw DomainError("find_almost_periods: requires 0 < eps < 1/2");
    if (N < 1) throw DomainError("find_almost_periods: requires N >= 1");
    if (!(min_gap > 0.0)) throw DomainError("find_almost_periods: requires min_gap > 0");
}

std::string not_found_message(const AlmostPeriodSet& set, std::size_t found, double reached) {
    std::ostringstream os;
    os << "find_almost_periods: found " << found << " of " << set.N << " values below M + 1 = " << set.M + 1.0
       << " (scanned to " << reached << " with grid step " << set.grid_step << ")";
    return os.str();
}

void grid_scan(AlmostPeriodSet& set) {
    const std::span<const double> t = set.freqs;
    const double eps = set.epsilon;
    double A = 0.0;
    for (double ti : t) A += ti * ti;
    const double step = set.grid_step;
    const double limit = set.M + 1.0;
    const double max_steps = std::min((limit - 1.0) / step + 2.0, kMaxAlmostPeriodSteps);
    const bool capped = (limit - 1.0) / step + 2.0 > kMaxAlmostPeriodSteps;

    std::vector<Window> pending;
    double cur = std::nextafter(1.0, 2.0);
    std::int64_t next_step = 0;
    while (set.s.size() < set.N) {
        if (static_cast<double>(next_step) >= max_steps) {
            if (capped) throw CapacityError("find_almost_periods: scan exceeds 1e10 grid steps");
            throw NotFoundError(not_found_message(set, set.s.size(), 1.0 + static_cast<double>(next_step) * step));
        }
        std::vector<std::vector<Window>> found(kBlocksPerWave);
#pragma omp parallel for schedule(dynamic, 1)
        for (int b = 0; b < kBlocksPerWave; ++b) {
            const std::int64_t first = next_step + static_cast<std::int64_t>(b) * kBlockSteps;
            for (std::int64_t j = first; j < first + kBlockSteps; ++j) {
                windows_at(1.0 + static_cast<double>(j) * step, t, eps, A, found[static_cast<std::size_t>(b)]);
            }
        }
        next_step += static_cast<std::int64_t>(kBlocksPerWave) * kBlockSteps;
        const double frontier = 1.0 + static_cast<double>(next_step) * step;
        for (auto& f : found) pending.insert(pending.end(), f.begin(), f.end());

        // Greedy: smallest valid u >= cur over all known windows, below the frontier.
        while (set.s.size() < set.N) {
            std::erase_if(pending, [&](const Window& w) { return w.hi <= cur; });
            double best = std::numeric_limits<double>::infinity();
            for (const auto& w : pending) {
                double u;
                if (w.lo < best && first_valid(w, cur, t, eps, u)) best = std::min(best, u);
            }
            if (!(best < frontier)) break;
            if (best > limit) throw NotFoundError(not_found_message(set, set.s.size(), best));
            set.s.push_back(best);
            cur = best + set.min_gap;
        }
    }
}

void pigeonhole(AlmostPeriodSet& set) {
    const std::span<const double> t = set.freqs;
    const std::size_t n = t.size();
    const double side = set.epsilon / (2.0 * std::sqrt(static_cast<double>(n)));
    const double limit = set.M + 1.0;
    const double gap = set.min_gap;
    std::map<std::vector<std::int64_t>, double> cells;
    std::vector<double> candidates;
    std::vector<std::int64_t> key(n);
    const double max_j = std::min(limit / gap + 1.0, kMaxAlmostPeriodSteps);
    for (std::int64_t j = 0; static_cast<double>(j) <= max_j; ++j) {
        const double u = static_cast<double>(j) * gap;
        for (std::size_t i = 0; i < n; ++i) {
            const double x = u * t[i];
            key[i] = static_cast<std::int64_t>(std::floor((x - std::floor(x)) / side));
        }
        auto [it, inserted] = cells.try_emplace(key, u);
        if (inserted) continue;
        const double d = u - it->second;
        it->second = u;
        if (d > 1.0 && d <= limit && scaled_norm(d, t) < set.epsilon) candidates.push_back(d);
        if (candidates.size() >= 4 * set.N + 16) {
            std::sort(candidates.begin(), candidates.end());
            candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
            std::vector<double> chosen;
            for (double c : candidates) {
                if (chosen.empty() || c >= chosen.back() + gap) chosen.push_back(c);
            }
            if (chosen.size() >= set.N) {
                chosen.resize(set.N);
                set.s = std::move(chosen);
                return;
            }
        }
    }
    std::sort(candidates.begin(), candidates.end());
    for (double c : candidates) {
        if (set.s.empty() || c >= set.s.back() + gap) set.s.push_back(c);
        if (set.s.size() == set.N) return;
    }
    throw NotFoundError(not_found_message(set, set.s.size(), max_j * gap));
}

}  // namespace

nlohmann::json AlmostPeriodSet::to_json() const {
    return {{"freqs", freqs}, {"epsilon", epsilon}, {"N", N}, {"min_gap", min_gap}, {"s", s}, {"M", M}};
}

double torus_norm(std::span<const double> v) {
    double acc = 0.0;
    for (double x : v) {
        const double f = x - std::floor(x);
        const double d = std::min(f, 1.0 - f);
        acc += d * d;
    }
    return std::sqrt(acc);
}

double almost_period_bound(std::size_t n, double epsilon, std::size_t N) {
    const double nd = static_cast<double>(n);
    return static_cast<double>(N) * std::pow(2.0, nd) * std::tgamma(nd / 2.0) /
           (std::pow(std::numbers::pi, nd / 2.0) * std::pow(epsilon, nd));
}

AlmostPeriodSet find_almost_periods(std::span<const double> freqs, double epsilon, std::size_t N, double min_gap,
                                    AlmostPeriodStrategy strategy) {
    validate(freqs, epsilon, N, min_gap);
    AlmostPeriodSet set;
    set.freqs.assign(freqs.begin(), freqs.end());
    set.epsilon = epsilon;
    set.N = N;
    set.min_gap = min_gap;
    set.M = almost_period_bound(freqs.size(), epsilon, N);
    double total = 0.0;
    for (double f : freqs) total += f;
    set.grid_step = epsilon / (4.0 * total);
    if (strategy == AlmostPeriodStrategy::GridScan) {
        grid_scan(set);
    } else {
        // Cube cells are coarser than the ball packing behind M, so bucketing
        // can run past the bound; the exact scan then takes over.
        try {
            pigeonhole(set);
        } catch (const NotFoundError&) {
            set.s.clear();
            grid_scan(set);
        }
    }
    return set;
}

}  // namespace signrace
