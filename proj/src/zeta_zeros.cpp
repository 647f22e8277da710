#include "signrace/zeta_zeros.hpp"

#include <algorithm>
#include <array>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

#include "signrace/detail/root_scan.hpp"
#include "signrace/detail/zero_io.hpp"
#include "signrace/errors.hpp"
#include "signrace/special.hpp"

namespace signrace {

namespace {

constexpr double kPi = std::numbers::pi;

// ---------------------------------------------------------------------------
// Riemann-Siegel remainder coefficients C_0..C_4 as power series in
// z = 2p - 1, where p is the fractional part of sqrt(t / 2 pi).  With
//   Psi(p) = cos(2 pi (p^2 - p - 1/16)) / cos(2 pi p) = -cos(pi z^2/2 - 5 pi/8) / cos(pi z)
// the C_k are fixed combinations of Psi and its p-derivatives.  Psi is
// entire, so the quotient series (computed once in 50-digit arithmetic)
// converges on all of [-1, 1].
// ---------------------------------------------------------------------------
constexpr int kSeriesDegree = 56;
constexpr int kPsiDegree = kSeriesDegree + 12;

using Big = boost::multiprecision::cpp_bin_float_50;

struct RemainderSeries {
    std::array<std::array<double, kSeriesDegree + 1>, 5> coef{};
};

RemainderSeries build_remainder_series() {
    const Big pi = boost::multiprecision::atan(Big(1)) * 4;
    const Big A = pi / 2;
    const Big B = 5 * pi / 8;
    const Big cosB = boost::multiprecision::cos(B);
    const Big sinB = boost::multiprecision::sin(B);

    std::vector<Big> fact(2 * kPsiDegree + 2);
    fact[0] = 1;
    for (std::size_t i = 1; i < fact.size(); ++i) fact[i] = fact[i - 1] * static_cast<int>(i);

    // numerator cos(A z^2 - B) = cos(A z^2) cos B + sin(A z^2) sin B
    std::vector<Big> num(kPsiDegree + 1, Big(0));
    for (int j = 0; 4 * j <= kPsiDegree; ++j) {
        const Big sign = (j % 2 == 0) ? 1 : -1;
        num[4 * j] += sign * boost::multiprecision::pow(A, 2 * j) / fact[2 * j] * cosB;
        if (4 * j + 2 <= kPsiDegree) {
            num[4 * j + 2] += sign * boost::multiprecision::pow(A, 2 * j + 1) / fact[2 * j + 1] * sinB;
        }
    }
    // denominator -cos(pi z)
    std::vector<Big> den(kPsiDegree + 1, Big(0));
    for (int j = 0; 2 * j <= kPsiDegree; ++j) {
        const Big sign = (j % 2 == 0) ? -1 : 1;
        den[2 * j] = sign * boost::multiprecision::pow(pi, 2 * j) / fact[2 * j];
    }
    std::vector<Big> psi(kPsiDegree + 1, Big(0));
    for (int n = 0; n <= kPsiDegree; ++n) {
        Big acc = num[n];
        for (int k = 0; k < n; ++k) acc -= psi[k] * den[n - k];
        psi[n] = acc / den[0];
    }

    // m-th p-derivative of Psi, coefficient of z^n: 2^m psi[n+m] (n+m)!/n!
    auto deriv = [&](int m, int n) -> Big {
        return boost::multiprecision::pow(Big(2), m) * psi[n + m] * fact[n + m] / fact[n];
    };
    const Big p2 = pi * pi, p4 = p2 * p2, p6 = p4 * p2, p8 = p4 * p4;

    RemainderSeries out;
    for (int n = 0; n <= kSeriesDegree; ++n) {
        const Big c0 = deriv(0, n);
        const Big c1 = -deriv(3, n) / (96 * p2);
        const Big c2 = deriv(2, n) / (64 * p2) + deriv(6, n) / (18432 * p4);
        const Big c3 = -deriv(1, n) / (64 * p2) - deriv(5, n) / (3840 * p4) - deriv(9, n) / (5308416 * p6);
        const Big c4 = deriv(0, n) / (128 * p2) + 19 * deriv(4, n) / (24576 * p4) +
                       11 * deriv(8, n) / (5898240 * p6) + deriv(12, n) / (Big(2038431744) * p8);
        out.coef[0][n] = static_cast<double>(c0);
        out.coef[1][n] = static_cast<double>(c1);
        out.coef[2][n] = static_cast<double>(c2);
        out.coef[3][n] = static_cast<double>(c3);
        out.coef[4][n] = static_cast<double>(c4);
    }
    return out;
}

const RemainderSeries& remainder_series() {
    static const RemainderSeries s = build_remainder_series();
    return s;
}

double horner(const std::array<double, kSeriesDegree + 1>& c, double z) {
    double r = 0.0;
    for (int n = kSeriesDegree; n >= 0; --n) r = r * z + c[n];
    return r;
}

// arg zeta(sigma + iT), continued from sigma = 3 (where |zeta - 1| < 0.21).
double tracked_arg_zeta(double T) {
    double sigma = 3.0;
    cplx prev = zeta({sigma, T});
    double phase = std::arg(prev);
    double step = 0.25;
    while (sigma > 0.5) {
        const double next = std::max(0.5, sigma - step);
        const cplx v = zeta({next, T});
        const double d = std::arg(v / prev);
        if (std::abs(d) > kPi / 4 && step > 1e-6) {
            step *= 0.5;
            continue;
        }
        phase += d;
        prev = v;
        sigma = next;
        step = std::min(0.25, step * 1.5);
    }
    return phase;
}

double integral_count(double T, const char* where) {
    const double n = argument_principle_count(T);
    if (std::abs(n - std::round(n)) > 0.1) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "argument-principle count %.4f at T = %.6f is not integral (%s)", n, T, where);
        throw CertificationError(buf);
    }
    return std::round(n);
}

}  // namespace

std::size_t ZeroList::count_below(double T) const {
    return static_cast<std::size_t>(std::lower_bound(gammas.begin(), gammas.end(), T) - gammas.begin());
}

double rs_theta(double t) {
    const double t2 = t * t;
    return 0.5 * t * std::log(t / (2.0 * kPi)) - 0.5 * t - kPi / 8.0 + 1.0 / (48.0 * t) +
           7.0 / (5760.0 * t * t2) + 31.0 / (80640.0 * t * t2 * t2) + 127.0 / (430080.0 * t * t2 * t2 * t2);
}

double riemann_siegel_z(double t, int corrections) {
    if (t < 10.0) throw DomainError("riemann_siegel_z: requires t >= 10");
    corrections = std::clamp(corrections, 0, 4);
    const double a = std::sqrt(t / (2.0 * kPi));
    const auto N = static_cast<long>(std::floor(a));
    const double p = a - static_cast<double>(N);
    const double th = rs_theta(t);
    double sum = 0.0;
    for (long n = 1; n <= N; ++n) {
        const double dn = static_cast<double>(n);
        sum += std::cos(th - t * std::log(dn)) / std::sqrt(dn);
    }
    sum *= 2.0;
    const auto& rs = remainder_series();
    const double z = 2.0 * p - 1.0;
    const double tau = 1.0 / a;
    double rem = 0.0;
    double tk = 1.0;
    for (int k = 0; k <= corrections; ++k) {
        rem += horner(rs.coef[k], z) * tk;
        tk *= tau;
    }
    const double sign = (N % 2 == 1) ? 1.0 : -1.0;  // (-1)^(N-1)
    return sum + sign * std::pow(a, -0.5) * rem;
}

double hardy_z(double t) {
    if (t < 10.0) throw DomainError("hardy_z: requires t >= 10");
    if (t >= kRiemannSiegelFrom) return riemann_siegel_z(t, 4);
    const cplx v = std::polar(1.0, rs_theta(t)) * zeta({0.5, t});
    return v.real();
}

double gram_point(long n) {
    if (n < -1) throw DomainError("gram_point: n >= -1");
    const double target = kPi * static_cast<double>(n);
    double t = 20.0;
    for (int i = 0; i < 50; ++i) {
        t = std::max(10.0, 2.0 * kPi * (static_cast<double>(n) + 0.125) / std::log(t / (2.0 * kPi * std::numbers::e)) );
        if (!std::isfinite(t)) t = 20.0;
    }
    for (int i = 0; i < 50; ++i) {
        const double f = rs_theta(t) - target;
        const double d = 0.5 * std::log(t / (2.0 * kPi));
        const double dt = f / d;
        t -= dt;
        if (std::abs(dt) < 1e-13 * t) break;
    }
    return t;
}

double argument_principle_count(double T) {
    if (T < 10.0) throw DomainError("argument_principle_count: requires T >= 10");
    return rs_theta(T) / kPi + 1.0 + tracked_arg_zeta(T) / kPi;
}

ZeroList compute_zeros(double T, const ZeroSearchOptions& opts) {
    if (T > kZetaHeightCapacity) throw CapacityError("compute_zeros: T exceeds capacity 1e4");
    if (T < 10.0) throw DomainError("compute_zeros: requires T >= 10");

    // Block boundaries; nudged off ordinates until the argument count is integral.
    std::vector<double> bounds{10.0};
    for (double b = 10.0 + opts.block; b < T - 1.0; b += opts.block) bounds.push_back(b);
    bounds.push_back(T);
    std::vector<double> counts(bounds.size());
    for (std::size_t i = 0; i < bounds.size(); ++i) {
        const bool movable = i + 1 < bounds.size();
        for (int attempt = 0;; ++attempt) {
            const double n = argument_principle_count(bounds[i]);
            if (std::abs(n - std::round(n)) <= 0.1) {
                counts[i] = std::round(n);
                break;
            }
            if (!movable || attempt > 8) {
                counts[i] = integral_count(bounds[i], "block boundary");
                break;
            }
            bounds[i] += 0.0137;
        }
    }
    if (counts[0] != 0.0) throw CertificationError("compute_zeros: nonzero count below t = 10");

    const auto f = [](double t) { return hardy_z(t); };
    ZeroList out;
    out.complete_to = T;
    out.source = ZeroSource::Computed;

    // Gram points, shared by all blocks as extra grid nodes.
    std::vector<double> grams;
    for (long n = -1;; ++n) {
        const double g = gram_point(n);
        if (g > T) break;
        if (g > 10.0) grams.push_back(g);
    }

    for (std::size_t b = 1; b < bounds.size(); ++b) {
        const double lo = bounds[b - 1];
        const double hi = bounds[b];
        const auto expected = static_cast<std::size_t>(counts[b] - counts[b - 1]);
        double step = opts.step;
        std::vector<double> roots;
        for (int r = 0;; ++r) {
            auto grid = detail::uniform_grid(lo, hi, step);
            for (double g : grams) {
                if (g > lo && g < hi) grid.push_back(g);
            }
            std::sort(grid.begin(), grid.end());
            grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
            const auto values = detail::evaluate_grid(f, grid);
            roots = detail::refine_roots(f, grid, values, opts.tolerance);
            if (roots.size() == expected) break;
            if (r >= opts.max_refinements) {
                char buf[200];
                std::snprintf(buf, sizeof buf,
                              "compute_zeros: found %zu sign changes but argument principle gives %zu in (%.4f, %.4f]",
                              roots.size(), expected, lo, hi);
                throw CertificationError(buf);
            }
            step /= 4.0;
        }
        out.gammas.insert(out.gammas.end(), roots.begin(), roots.end());
    }
    return out;
}

Report check_lemma3(const ZeroList& zeros, double T) {
    if (!(T > 2.0)) throw DomainError("check_lemma3: requires T > 2");
    if (T + 1.0 > zeros.complete_to) throw DomainError("check_lemma3: insufficient zero data");
    const auto n = static_cast<double>(zeros.count_below(T));
    const auto n1 = static_cast<double>(zeros.count_below(T + 1.0));
    const double b1 = T * std::log(T) / 6.0;
    const double b2 = std::log(T);
    Report r;
    r.check = "zeta_zero_counts";
    r.params = {{"T", T}, {"complete_to", zeros.complete_to}};
    r.measured = {{"N(T)", n}, {"N(T+1)-N(T)", n1 - n}, {"slack_count", b1 - n}, {"slack_gap", b2 - (n1 - n)}};
    r.bound = {{"T log T / 6", b1}, {"log T", b2}};
    r.status = pass_if(n < b1 && n1 - n < b2);
    return r;
}

double reciprocal_square_sum_exact() {
    return 2.0 + kEulerGamma - std::log(kPi) - 2.0 * std::log(2.0);
}

Interval reciprocal_square_sum(const ZeroList& zeros) {
    if (zeros.complete_to < 100.0) throw DomainError("reciprocal_square_sum: requires complete_to >= 100");
    const double T = zeros.complete_to;
    double lo = 0.0;
    std::size_t n = 0;
    for (double g : zeros.gammas) {
        if (g > T) break;
        lo += 2.0 / (0.25 + g * g);
        ++n;
    }
    // sum_{gamma > T} gamma^-2 = -N(T)/T^2 + 2 int_T^inf N(t) t^-3 dt, N(t) < t log t / 6
    const double tail = -static_cast<double>(n) / (T * T) + (std::log(T) + 1.0) / (3.0 * T);
    return {lo, lo + 2.0 * std::max(0.0, tail)};
}

namespace detail {

double parse_ordinate(const std::string& text, long lineno) {
    std::size_t b = text.find_first_not_of(" \t\r");
    std::size_t e = text.find_last_not_of(" \t\r");
    if (b == std::string::npos) throw ParseError("zero list: empty line", lineno);
    const std::string s = text.substr(b, e - b + 1);
    const auto dot = s.find('.');
    if (dot == std::string::npos || s.size() - dot - 1 < 9) {
        throw ParseError("zero list: ordinate needs at least 9 fractional digits", lineno);
    }
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw ParseError("zero list: not a number", lineno);
    }
    if (used != s.size()) throw ParseError("zero list: trailing characters", lineno);
    if (!(v > 0.0)) throw ParseError("zero list: ordinate must be positive", lineno);
    return v;
}

std::optional<double> comment_value(const std::string& line, const std::string& key) {
    const auto pos = line.find(key + "=");
    if (pos == std::string::npos) return std::nullopt;
    try {
        return std::stod(line.substr(pos + key.size() + 1));
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

std::string format_ordinate(double gamma) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12f", gamma);
    return buf;
}

}  // namespace detail

void save_zeros(std::ostream& out, const ZeroList& zeros) {
    out << "# nontrivial zeta zeros, ordinates gamma > 0\n";
    for (double g : zeros.gammas) out << detail::format_ordinate(g) << '\n';
    out << "# complete_to=" << detail::format_ordinate(zeros.complete_to) << '\n';
}

ZeroList load_zeros(std::istream& in) {
    ZeroList z;
    z.source = ZeroSource::Loaded;
    std::optional<double> complete;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (line[first] == '#') {
            if (auto v = detail::comment_value(line, "complete_to")) complete = v;
            continue;
        }
        const double g = detail::parse_ordinate(line, lineno);
        if (!z.gammas.empty() && g <= z.gammas.back()) {
            throw ParseError("zero list: ordinates not strictly ascending", lineno);
        }
        if (z.gammas.empty() && g <= 14.0) throw ParseError("zero list: first ordinate must exceed 14", lineno);
        z.gammas.push_back(g);
    }
    if (z.gammas.empty()) throw ParseError("zero list: no ordinates", lineno);
    z.complete_to = complete.value_or(z.gammas.back());
    if (z.complete_to < z.gammas.back()) {
        throw ParseError("zero list: complete_to below last ordinate", lineno);
    }
    return z;
}

ZeroList load_zeros(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("zero list: cannot open " + path.string(), 0);
    return load_zeros(in);
}

}  // namespace signrace
