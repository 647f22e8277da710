#include "signrace/sieve.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include "signrace/errors.hpp"

namespace signrace {

namespace {

// Presieve primes; their product is the pattern period over odd numbers.
constexpr std::int64_t kPresievePrimes[] = {3, 5, 7, 11, 13};
constexpr std::int64_t kPresievePeriod = 3 * 5 * 7 * 11 * 13;

const std::vector<std::uint8_t>& presieve_pattern() {
    static const std::vector<std::uint8_t> pattern = [] {
        std::vector<std::uint8_t> p(kPresievePeriod, 1);
        for (std::int64_t j = 0; j < kPresievePeriod; ++j) {
            const std::int64_t n = 2 * j + 1;
            for (std::int64_t q : kPresievePrimes) {
                if (n % q == 0) p[j] = 0;
            }
        }
        return p;
    }();
    return pattern;
}

struct Kahan {
    double sum = 0.0;
    double comp = 0.0;
    void add(double x) {
        const double y = x - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum - comp; }
};

// Sieve segment `seg` (odd numbers 2*j+1 for j in [seg*S, seg*S + S)) into
// `flags`; returns the number of valid entries (numbers <= limit).
std::int64_t sieve_segment(std::int64_t seg, std::int64_t limit, std::span<const std::int64_t> base,
                           std::vector<std::uint8_t>& flags) {
    const std::int64_t j0 = seg * kSegmentOdds;
    const std::int64_t lo = 2 * j0 + 1;
    if (lo > limit) return 0;
    const std::int64_t count = std::min<std::int64_t>(kSegmentOdds, (limit - lo) / 2 + 1);
    const std::int64_t hi = lo + 2 * (count - 1);
    flags.resize(static_cast<std::size_t>(count));

    const auto& pattern = presieve_pattern();
    std::int64_t off = j0 % kPresievePeriod;
    for (std::int64_t i = 0; i < count;) {
        const std::int64_t len = std::min(count - i, kPresievePeriod - off);
        std::copy_n(pattern.begin() + off, len, flags.begin() + i);
        i += len;
        off = 0;
    }
    if (seg == 0) {
        flags[0] = 0;  // 1
        for (std::int64_t p : kPresievePrimes) {
            if (p <= hi) flags[(p - 1) / 2] = 1;
        }
    }

    for (std::int64_t p : base) {
        if (p < 17) continue;
        if (p * p > hi) break;
        std::int64_t m = (lo + p - 1) / p * p;
        if (m % 2 == 0) m += p;
        m = std::max(m, p * p);
        for (std::int64_t idx = (m - lo) / 2; idx < count; idx += p) flags[idx] = 0;
    }
    return count;
}

std::int64_t isqrt(std::int64_t n) {
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// Counts and log-sums for one segment over the checkpoint intervals it touches.
struct SegmentPartial {
    std::size_t first = 0;
    std::size_t intervals = 0;
    std::vector<std::int64_t> count;
    std::vector<Kahan> log_sum;
};

}  // namespace

int ResidueCensus::column(std::int64_t a) const {
    std::int64_t r = a % modulus;
    if (r < 0) r += modulus;
    auto it = std::lower_bound(residues.begin(), residues.end(), r);
    if (it == residues.end() || *it != r) return -1;
    return static_cast<int>(it - residues.begin());
}

std::vector<std::int64_t> small_primes(std::int64_t n) {
    std::vector<std::int64_t> out;
    if (n < 2) return out;
    std::vector<bool> composite(static_cast<std::size_t>(n + 1), false);
    for (std::int64_t i = 2; i <= n; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (std::int64_t m = i * i; m <= n; m += i) composite[m] = true;
    }
    return out;
}

std::vector<PrimePower> higher_prime_powers(std::int64_t x_max) {
    std::vector<PrimePower> out;
    for (std::int64_t p : small_primes(isqrt(x_max))) {
        std::int64_t n = p * p;
        for (int k = 2; n <= x_max; ++k) {
            out.push_back({n, p, k});
            if (n > x_max / p) break;
            n *= p;
        }
    }
    std::sort(out.begin(), out.end(), [](const PrimePower& a, const PrimePower& b) { return a.n < b.n; });
    return out;
}

std::vector<std::int64_t> geometric_checkpoints(std::int64_t start, std::int64_t x_max, double ratio) {
    if (start < 2 || x_max < start || !(ratio > 1.0)) {
        throw DomainError("geometric_checkpoints: need 2 <= start <= x_max and ratio > 1");
    }
    std::vector<std::int64_t> out;
    double x = static_cast<double>(start);
    while (x < static_cast<double>(x_max)) {
        const auto v = static_cast<std::int64_t>(std::floor(x));
        if (out.empty() || v > out.back()) out.push_back(v);
        x *= ratio;
    }
    if (out.empty() || out.back() != x_max) out.push_back(x_max);
    return out;
}

ResidueCensus census(std::int64_t q, std::int64_t x_max, std::span<const std::int64_t> checkpoints) {
    if (q < 3) throw DomainError("census: q must be >= 3");
    if (x_max > kSieveCapacity) {
        throw CapacityError("census: x_max exceeds capacity 1e10");
    }
    if (checkpoints.empty()) throw DomainError("census: empty checkpoint list");
    for (std::size_t i = 0; i < checkpoints.size(); ++i) {
        if (checkpoints[i] < 2 || checkpoints[i] > x_max ||
            (i > 0 && checkpoints[i] <= checkpoints[i - 1])) {
            throw DomainError("census: checkpoints must be strictly increasing within [2, x_max]");
        }
    }

    ResidueCensus c;
    c.modulus = q;
    c.checkpoints.assign(checkpoints.begin(), checkpoints.end());
    std::vector<int> column(static_cast<std::size_t>(q), -1);
    for (std::int64_t r = 0; r < q; ++r) {
        if (gcd64(r, q) == 1) {
            column[r] = static_cast<int>(c.residues.size());
            c.residues.push_back(r);
        }
    }
    const std::size_t width = c.residues.size();
    const std::size_t slots = width + 1;  // last slot: all n
    const std::size_t n_cp = checkpoints.size();
    const std::int64_t limit = checkpoints.back();

    const auto base = small_primes(isqrt(limit) + 1);
    const std::int64_t n_segments = (limit - 1) / 2 / kSegmentOdds + 1;
    std::vector<SegmentPartial> partials(static_cast<std::size_t>(n_segments));

#pragma omp parallel
    {
        std::vector<std::uint8_t> flags;
#pragma omp for schedule(dynamic, 1)
        for (std::int64_t seg = 0; seg < n_segments; ++seg) {
            const std::int64_t count = sieve_segment(seg, limit, base, flags);
            const std::int64_t lo = 2 * seg * kSegmentOdds + 1;
            const std::int64_t hi = lo + 2 * (count - 1);
            auto& part = partials[seg];
            const auto first = static_cast<std::size_t>(
                std::lower_bound(checkpoints.begin(), checkpoints.end(), lo) - checkpoints.begin());
            const auto last = static_cast<std::size_t>(
                std::lower_bound(checkpoints.begin(), checkpoints.end(), hi) - checkpoints.begin());
            part.first = first;
            part.intervals = std::min(last, n_cp - 1) - first + 1;
            part.count.assign(part.intervals * slots, 0);
            part.log_sum.assign(part.intervals * slots, Kahan{});
            std::size_t cp = first;
            for (std::int64_t j = 0; j < count; ++j) {
                if (!flags[j]) continue;
                const std::int64_t n = lo + 2 * j;
                while (checkpoints[cp] < n) ++cp;
                const std::size_t row = (cp - first) * slots;
                const double lg = std::log(static_cast<double>(n));
                const int col = column[n % q];
                if (col >= 0) {
                    ++part.count[row + col];
                    part.log_sum[row + col].add(lg);
                }
                ++part.count[row + width];
                part.log_sum[row + width].add(lg);
            }
        }
    }

    // Per-interval accumulators, merged in ascending segment order.
    std::vector<std::int64_t> cnt(n_cp * slots, 0);
    std::vector<Kahan> lsum(n_cp * slots);
    std::vector<Kahan> frac(n_cp * slots);  // Lambda(n)/log n - 1 contributions of prime powers

    auto add_prime = [&](std::int64_t n, double lg, double pi_weight, bool is_prime) {
        const auto cp = static_cast<std::size_t>(
            std::lower_bound(checkpoints.begin(), checkpoints.end(), n) - checkpoints.begin());
        if (cp >= n_cp) return;
        const int col = column[n % q];
        for (std::size_t slot : {static_cast<std::size_t>(col), width}) {
            if (slot == static_cast<std::size_t>(-1)) continue;
            if (is_prime) {
                ++cnt[cp * slots + slot];
            } else {
                frac[cp * slots + slot].add(pi_weight);
            }
            lsum[cp * slots + slot].add(lg);
        }
    };
    add_prime(2, std::log(2.0), 1.0, true);

    for (const auto& part : partials) {
        for (std::size_t i = 0; i < part.intervals; ++i) {
            for (std::size_t s = 0; s < slots; ++s) {
                const std::size_t dst = (part.first + i) * slots + s;
                cnt[dst] += part.count[i * slots + s];
                lsum[dst].add(part.log_sum[i * slots + s].value());
            }
        }
    }
    for (const auto& pp : higher_prime_powers(limit)) {
        add_prime(pp.n, std::log(static_cast<double>(pp.p)), 1.0 / pp.k, false);
    }

    c.pi.assign(n_cp * width, 0);
    c.psi.assign(n_cp * width, 0.0);
    c.Pi.assign(n_cp * width, 0.0);
    c.pi_total.assign(n_cp, 0);
    c.psi_total.assign(n_cp, 0.0);
    c.Pi_total.assign(n_cp, 0.0);
    std::vector<std::int64_t> run_cnt(slots, 0);
    std::vector<Kahan> run_log(slots), run_frac(slots);
    for (std::size_t cp = 0; cp < n_cp; ++cp) {
        for (std::size_t s = 0; s < slots; ++s) {
            run_cnt[s] += cnt[cp * slots + s];
            run_log[s].add(lsum[cp * slots + s].value());
            run_frac[s].add(frac[cp * slots + s].value());
            const double Pi = static_cast<double>(run_cnt[s]) + run_frac[s].value();
            if (s < width) {
                c.pi[cp * width + s] = run_cnt[s];
                c.psi[cp * width + s] = run_log[s].value();
                c.Pi[cp * width + s] = Pi;
            } else {
                c.pi_total[cp] = run_cnt[s];
                c.psi_total[cp] = run_log[s].value();
                c.Pi_total[cp] = Pi;
            }
        }
    }
    return c;
}

void for_each_prime_block(std::int64_t x_max,
                          const std::function<void(std::span<const std::int64_t>)>& sink) {
    if (x_max > kSieveCapacity) throw CapacityError("prime stream: x_max exceeds capacity 1e10");
    if (x_max < 2) return;
    const std::int64_t two[] = {2};
    sink(two);
    if (x_max < 3) return;
    const auto base = small_primes(isqrt(x_max) + 1);
    const std::int64_t n_segments = (x_max - 1) / 2 / kSegmentOdds + 1;
    const std::int64_t batch = 4 * static_cast<std::int64_t>(omp_get_max_threads());
    std::vector<std::vector<std::int64_t>> blocks(static_cast<std::size_t>(batch));
    for (std::int64_t first = 0; first < n_segments; first += batch) {
        const std::int64_t last = std::min(n_segments, first + batch);
#pragma omp parallel
        {
            std::vector<std::uint8_t> flags;
#pragma omp for schedule(dynamic, 1)
            for (std::int64_t seg = first; seg < last; ++seg) {
                const std::int64_t count = sieve_segment(seg, x_max, base, flags);
                const std::int64_t lo = 2 * seg * kSegmentOdds + 1;
                auto& out = blocks[seg - first];
                out.clear();
                for (std::int64_t j = 0; j < count; ++j) {
                    if (flags[j]) out.push_back(lo + 2 * j);
                }
            }
        }
        for (std::int64_t seg = first; seg < last; ++seg) sink(blocks[seg - first]);
    }
}

std::int64_t pi_reference(std::int64_t x) {
    if (x > kReferenceCapacity) throw CapacityError("pi_reference: x exceeds capacity 1e8");
    if (x < 2) return 0;
    // Plain byte-per-integer sieve, crossing off from i*i for every surviving i.
    std::vector<bool> composite(static_cast<std::size_t>(x + 1), false);
    std::int64_t count = 0;
    for (std::int64_t i = 2; i <= x; ++i) {
        if (composite[i]) continue;
        ++count;
        if (i <= x / i) {
            for (std::int64_t m = i * i; m <= x; m += i) composite[m] = true;
        }
    }
    return count;
}

std::int64_t pi_segmented(std::int64_t x) {
    if (x < 2) return 0;
    const std::int64_t cp[] = {x};
    return census(3, x, cp).pi_total[0];
}

std::complex<double> psi_chi(const ResidueCensus& c, std::size_t checkpoint,
                             const CharacterTable& table, std::size_t k) {
    if (table.modulus() != c.modulus) throw DomainError("psi_chi: modulus mismatch");
    std::complex<double> s = 0.0;
    for (std::size_t r = 0; r < c.width(); ++r) {
        s += table.value(k, c.residues[r]) * c.psi_at(checkpoint, r);
    }
    return s;
}

std::complex<double> psi_chi_direct(double x, const CharacterTable& table, std::size_t k) {
    if (x < 1.0) throw DomainError("psi_chi: x must be >= 1");
    const auto n = static_cast<std::int64_t>(std::floor(x));
    std::complex<double> s = 0.0;
    for (std::int64_t p : small_primes(n)) {
        const double lg = std::log(static_cast<double>(p));
        for (std::int64_t pk = p; pk <= n; pk *= p) {
            s += table.value(k, pk) * lg;
            if (pk > n / p) break;
        }
    }
    return s;
}

void write_census_csv(std::ostream& out, const ResidueCensus& c) {
    out << "x,a,pi,psi,Pi\n";
    char buf[128];
    for (std::size_t i = 0; i < c.checkpoints.size(); ++i) {
        for (std::size_t r = 0; r < c.width(); ++r) {
            std::snprintf(buf, sizeof buf, "%lld,%lld,%lld,%.12g,%.12g\n",
                          static_cast<long long>(c.checkpoints[i]),
                          static_cast<long long>(c.residues[r]),
                          static_cast<long long>(c.pi_at(i, r)), c.psi_at(i, r), c.Pi_at(i, r));
            out << buf;
        }
    }
}

ResidueCensus read_census_csv(std::istream& in, std::int64_t q) {
    ResidueCensus c;
    c.modulus = q;
    for (std::int64_t r = 0; r < q; ++r) {
        if (gcd64(r, q) == 1) c.residues.push_back(r);
    }
    std::string line;
    long lineno = 0;
    if (!std::getline(in, line) || line != "x,a,pi,psi,Pi") throw ParseError("census csv: bad header", 1);
    ++lineno;
    std::size_t col = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        long long x = 0, a = 0, pi = 0;
        double psi = 0.0, Pi = 0.0;
        if (std::sscanf(line.c_str(), "%lld,%lld,%lld,%lf,%lf", &x, &a, &pi, &psi, &Pi) != 5) {
            throw ParseError("census csv: malformed row", lineno);
        }
        if (col == 0) c.checkpoints.push_back(x);
        if (a != c.residues[col] || x != c.checkpoints.back()) {
            throw ParseError("census csv: rows out of order", lineno);
        }
        c.pi.push_back(pi);
        c.psi.push_back(psi);
        c.Pi.push_back(Pi);
        col = (col + 1) % c.width();
    }
    if (col != 0) throw ParseError("census csv: truncated checkpoint block", lineno);
    return c;
}

}  // namespace signrace
