#include "signrace/l_functions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <optional>
#include <string>

#include "signrace/detail/root_scan.hpp"
#include "signrace/detail/zero_io.hpp"
#include "signrace/errors.hpp"
#include "signrace/special.hpp"

namespace signrace {

namespace {

constexpr double kPi = std::numbers::pi;

void require_capacity(const CharacterTable& table, const char* who) {
    if (table.modulus() > kLModulusCapacity) {
        throw CapacityError(std::string(who) + ": modulus exceeds capacity 50");
    }
}

// Continuous arg of f along the segment from `from` to `to`, starting from the
// principal value at `from`.
template <class F>
double tracked_arg(F&& f, cplx from, cplx to) {
    cplx prev = f(from);
    double phase = std::arg(prev);
    const double length = std::abs(to - from);
    double done = 0.0;
    double step = 0.25;
    while (done < length) {
        const double next = std::min(length, done + step);
        const cplx v = f(from + (to - from) * (next / length));
        const double d = std::arg(v / prev);
        if (std::abs(d) > kPi / 4 && step > 1e-6) {
            step *= 0.5;
            continue;
        }
        phase += d;
        prev = v;
        done = next;
        step = std::min(0.25, step * 1.5);
    }
    return phase;
}

// Imaginary part of the Gamma factor phase for parity a.
double gamma_phase(double t, std::int64_t q, int a) {
    return 0.5 * t * std::log(static_cast<double>(q) / kPi) + log_gamma({(0.5 + a) / 2.0, t / 2.0}).imag();
}

std::vector<double> scan_positive_zeros(const CharacterTable& table, std::size_t k, double T,
                                        const LZeroSearchOptions& opts) {
    std::vector<double> bounds{0.0};
    for (double b = opts.block; b < T - 0.5; b += opts.block) bounds.push_back(b);
    bounds.push_back(T);
    std::vector<double> counts(bounds.size(), 0.0);
    for (std::size_t i = 1; i < bounds.size(); ++i) {
        const bool movable = i + 1 < bounds.size();
        for (int attempt = 0;; ++attempt) {
            const double n = l_argument_count(bounds[i], table, k);
            if (std::abs(n - std::round(n)) <= 0.1) {
                counts[i] = std::round(n);
                break;
            }
            if (!movable || attempt > 8) {
                char buf[160];
                std::snprintf(buf, sizeof buf, "compute_l_zeros: argument count %.4f at T = %.6f is not integral",
                              n, bounds[i]);
                throw CertificationError(buf);
            }
            bounds[i] += 0.0137;
        }
    }

    const auto f = [&](double t) { return rotated_l(t, table, k); };
    std::vector<double> out;
    for (std::size_t b = 1; b < bounds.size(); ++b) {
        const double lo = bounds[b - 1];
        const double hi = bounds[b];
        const auto expected = static_cast<std::size_t>(counts[b] - counts[b - 1]);
        double step = opts.step;
        std::vector<double> roots;
        for (int r = 0;; ++r) {
            const auto grid = detail::uniform_grid(lo, hi, step);
            const auto values = detail::evaluate_grid(f, grid);
            roots = detail::refine_roots(f, grid, values, opts.tolerance);
            if (roots.size() == expected) break;
            if (r >= opts.max_refinements) {
                char buf[220];
                std::snprintf(buf, sizeof buf,
                              "compute_l_zeros: q = %lld chi = %zu: %zu sign changes but argument principle gives "
                              "%zu in (%.4f, %.4f]",
                              static_cast<long long>(table.modulus()), k, roots.size(), expected, lo, hi);
                throw CertificationError(buf);
            }
            step /= 4.0;
        }
        out.insert(out.end(), roots.begin(), roots.end());
    }
    return out;
}

}  // namespace

std::size_t LZeroList::count_pos(double T) const {
    return static_cast<std::size_t>(std::lower_bound(gammas_pos.begin(), gammas_pos.end(), T) - gammas_pos.begin());
}

std::size_t LZeroList::count_neg(double T) const {
    return static_cast<std::size_t>(
        std::lower_bound(gammas_neg.begin(), gammas_neg.end(), -T, std::greater<>()) - gammas_neg.begin());
}

LZeroList principal_zero_list(std::int64_t q, const ZeroList& zeta_zeros) {
    LZeroList z;
    z.q = q;
    z.chi = 0;
    z.gammas_pos = zeta_zeros.gammas;
    z.gammas_neg.reserve(zeta_zeros.gammas.size());
    for (double g : zeta_zeros.gammas) z.gammas_neg.push_back(-g);
    z.complete_to = zeta_zeros.complete_to;
    z.source = zeta_zeros.source;
    return z;
}

InducingCharacter inducing_character(const CharacterTable& table, std::size_t k) {
    if (table.is_principal(k)) throw DomainError("inducing_character: principal character has conductor 1");
    if (table.is_primitive(k)) return {table, k};
    const std::int64_t q = table.modulus();
    for (std::int64_t d = 3; d < q; ++d) {
        if (q % d != 0) continue;
        auto small = CharacterTable::build(d);
        for (std::size_t j = 1; j < small.size(); ++j) {
            if (!small.is_primitive(j)) continue;
            bool match = true;
            for (std::int64_t n : table.units()) {
                if (std::abs(small.value(j, n) - table.value(k, n)) > 1e-12) {
                    match = false;
                    break;
                }
            }
            if (match) return {std::move(small), j};
        }
    }
    throw DomainError("inducing_character: no primitive character found");
}

LValue l_eval_with_derivative(cplx s, const CharacterTable& table, std::size_t k) {
    const bool principal = table.is_principal(k);
    if (principal && s == cplx(1.0, 0.0)) throw DomainError("l_eval: pole at s = 1 for the principal character");
    const std::int64_t q = table.modulus();
    const double qd = static_cast<double>(q);
    const int cutoff = default_em_cutoff(s);
    cplx sum = 0.0;
    cplx dsum = 0.0;
    for (std::int64_t a : table.units()) {
        const cplx c = table.value(k, a);
        const auto h = hurwitz_zeta_regular(s, static_cast<double>(a) / qd, cutoff);
        sum += c * h.value;
        dsum += c * h.derivative;
    }
    if (principal) {
        const double phi = static_cast<double>(table.phi());
        sum += phi / (s - 1.0);
        dsum -= phi / ((s - 1.0) * (s - 1.0));
    }
    const double lq = std::log(qd);
    const cplx qs = std::exp(-s * lq);
    const cplx value = qs * sum;
    return {value, -lq * value + qs * dsum};
}

cplx l_eval(cplx s, const CharacterTable& table, std::size_t k) {
    return l_eval_with_derivative(s, table, k).value;
}

cplx gauss_sum(const CharacterTable& table, std::size_t k) {
    const double q = static_cast<double>(table.modulus());
    cplx tau = 0.0;
    for (std::int64_t n : table.units()) {
        tau += table.value(k, n) * std::polar(1.0, 2.0 * kPi * static_cast<double>(n) / q);
    }
    return tau;
}

cplx root_number(const CharacterTable& table, std::size_t k) {
    const cplx ia = table.parity(k) == 1 ? cplx(0.0, 1.0) : cplx(1.0, 0.0);
    return gauss_sum(table, k) / (ia * std::sqrt(static_cast<double>(table.modulus())));
}

cplx rotated_l_complex(double t, const CharacterTable& table, std::size_t k) {
    const double theta =
        gamma_phase(t, table.modulus(), table.parity(k)) - 0.5 * std::arg(root_number(table, k));
    return std::polar(1.0, theta) * l_eval({0.5, t}, table, k);
}

double rotated_l(double t, const CharacterTable& table, std::size_t k) {
    return rotated_l_complex(t, table, k).real();
}

double l_argument_count(double T, const CharacterTable& table, std::size_t k) {
    if (!(T > 0.0)) throw DomainError("l_argument_count: requires T > 0");
    const auto L = [&](cplx s) { return l_eval(s, table, k); };
    // |L(3 + it) - 1| <= zeta(3) - 1 < 0.21, so the principal arg is continuous on Re s = 3.
    const double top = tracked_arg(L, {3.0, T}, {0.5, T});
    const double bottom = tracked_arg(L, {3.0, 0.0}, {0.5, 0.0});
    return (gamma_phase(T, table.modulus(), table.parity(k)) + top - bottom) / kPi;
}

LZeroList compute_l_zeros(const CharacterTable& table, std::size_t k, double T, const LZeroSearchOptions& opts) {
    require_capacity(table, "compute_l_zeros");
    if (table.is_principal(k)) throw DomainError("compute_l_zeros: principal character (use the zeta zeros)");
    if (T > kLHeightCapacity) throw CapacityError("compute_l_zeros: T exceeds capacity 200");
    if (!(T > 0.0)) throw DomainError("compute_l_zeros: requires T > 0");

    const auto ind = inducing_character(table, k);
    LZeroList z;
    z.q = table.modulus();
    z.chi = k;
    z.complete_to = T;
    z.gammas_pos = scan_positive_zeros(ind.table, ind.index, T, opts);
    const std::size_t conj = ind.table.conjugate(ind.index);
    const auto mirror = conj == ind.index ? z.gammas_pos : scan_positive_zeros(ind.table, conj, T, opts);
    z.gammas_neg.reserve(mirror.size());
    for (double g : mirror) z.gammas_neg.push_back(-g);
    return z;
}

cplx l_log_derivative_at_1(const CharacterTable& table, std::size_t k) {
    if (table.is_principal(k)) throw DomainError("l_log_derivative_at_1: principal character");
    const auto v = l_eval_with_derivative({1.0, 0.0}, table, k);
    return v.derivative / v.value;
}

Report check_lemma8(const LZeroList& zeros, double T) {
    if (T > zeros.complete_to) throw DomainError("check_lemma8: T exceeds complete_to");
    if (!(T > 0.0)) throw DomainError("check_lemma8: requires T > 0");
    const double q = static_cast<double>(zeros.q);
    const auto np = static_cast<double>(zeros.count_pos(T));
    const auto nn = static_cast<double>(zeros.count_neg(T));
    const double main = T / kPi * std::log(q * T / (2.0 * kPi)) - T / kPi;
    const double dev = std::abs(np + nn - main);
    const double dev_bound = std::log(q * T) / 2.1 + 30.0;
    const double asym = std::abs(np - nn);
    const double asym_bound = 1.25 * std::log(q * T);
    Report r;
    r.check = "l_zero_counts";
    r.params = {{"q", zeros.q}, {"chi", zeros.chi}, {"T", T}};
    r.measured = {{"N_plus", np},
                  {"N_minus", nn},
                  {"main_term", main},
                  {"main_term_deviation", dev},
                  {"asymmetry", asym},
                  {"within_deviation_formula", dev < dev_bound},
                  {"within_asymmetry_formula", asym < asym_bound}};
    r.bound = {{"(1/2.1) log qT + 30", dev_bound}, {"(5/4) log qT", asym_bound}};
    r.status = Status::ReportOnly;
    return r;
}

Interval l_reciprocal_square_sum(const LZeroList& zeros) {
    const double T = zeros.complete_to;
    if (!(T >= 10.0)) throw DomainError("l_reciprocal_square_sum: requires complete_to >= 10");
    double lo = 0.0;
    std::size_t n = 0;
    for (double g : zeros.gammas_pos) {
        if (g > T) break;
        lo += 1.0 / (0.25 + g * g);
        ++n;
    }
    for (double g : zeros.gammas_neg) {
        if (-g > T) break;
        lo += 1.0 / (0.25 + g * g);
        ++n;
    }
    // sum_{|gamma| > T} gamma^-2 = -N(T)/T^2 + 2 int_T^inf N(t) t^-3 dt with
    // N(t) < (t/pi)(log(qt/2pi) - 1) + A log(qt) + 30, A = 1/2.1.
    const double q = static_cast<double>(zeros.q);
    const double c = std::log(q / (2.0 * kPi)) - 1.0;
    const double A = 1.0 / 2.1;
    const double T2 = T * T;
    const double integral = (c + std::log(T) + 1.0) / (kPi * T) + A * (std::log(q * T) / (2.0 * T2) + 0.25 / T2) +
                            15.0 / T2;
    const double tail = -static_cast<double>(n) / T2 + 2.0 * integral;
    return {lo, lo + std::max(0.0, tail)};
}

Report check_lemma8_reciprocal(const LZeroList& zeros) {
    const auto iv = l_reciprocal_square_sum(zeros);
    const double bound = 13.0 * std::log(static_cast<double>(zeros.q));
    Report r;
    r.check = "l_reciprocal_square_sum";
    r.params = {{"q", zeros.q}, {"chi", zeros.chi}, {"complete_to", zeros.complete_to}};
    r.measured = {{"partial_sum", iv.lo}, {"with_tail", iv.hi}};
    r.bound = {{"13 log q", bound}};
    r.status = pass_if(iv.hi <= bound);
    return r;
}

cplx lemma10_sum(const CharacterTable& table, std::int64_t a) {
    if (!table.coprime(a)) throw DomainError("lemma10_sum: gcd(a, q) > 1");
    // L'/L(s, chi_0) = zeta'/zeta(s) + sum_{p|q} log p / (p^s - 1); finite part at s = 1.
    double principal = kEulerGamma;
    for (auto [p, e] : factorize(table.modulus())) {
        principal += std::log(static_cast<double>(p)) / static_cast<double>(p - 1);
    }
    cplx f = principal;
    for (std::size_t k = 1; k < table.size(); ++k) {
        f += std::conj(table.value(k, a)) * l_log_derivative_at_1(table, k);
    }
    return f;
}

Report check_lemma10(std::int64_t q, std::int64_t a) {
    const auto table = CharacterTable::build(q);
    require_capacity(table, "check_lemma10");
    const std::int64_t ar = ((a % q) + q) % q;
    if (!table.coprime(ar)) throw DomainError("check_lemma10: gcd(a, q) > 1");
    const cplx f = lemma10_sum(table, ar);
    const double qd = static_cast<double>(q);
    const double phi = static_cast<double>(table.phi());
    const double main = ar == 0 ? 0.0 : phi * von_mangoldt(ar) / static_cast<double>(ar);
    const double lq = std::log(qd);
    const double bound = 2.0 * lq * lq + 9.0 * std::sqrt(phi * lq);
    const double dev = std::abs(std::abs(f) - main);
    Report r;
    r.check = "character_sum_deviation";
    r.params = {{"q", q}, {"a", ar}};
    r.measured = {{"re", f.real()}, {"im", f.imag()}, {"abs", std::abs(f)}, {"main_term", main}, {"deviation", dev}};
    r.bound = {{"2 log^2 q + 9 sqrt(phi(q) log q)", bound}};
    r.status = pass_if(dev <= bound);
    return r;
}

void save_l_zeros(std::ostream& out, const LZeroList& zeros) {
    out << "# q=" << zeros.q << " chi=" << zeros.chi << " sign=+\n";
    for (double g : zeros.gammas_pos) out << detail::format_ordinate(g) << '\n';
    out << "# q=" << zeros.q << " chi=" << zeros.chi << " sign=-\n";
    for (double g : zeros.gammas_neg) out << detail::format_ordinate(-g) << '\n';
    out << "# complete_to=" << detail::format_ordinate(zeros.complete_to) << '\n';
}

LZeroList load_l_zeros(std::istream& in) {
    LZeroList z;
    z.source = ZeroSource::Loaded;
    std::optional<double> complete;
    int sign = 0;
    bool seen_pos = false;
    bool seen_neg = false;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (line[first] == '#') {
            if (auto v = detail::comment_value(line, "complete_to")) complete = v;
            const auto sp = line.find("sign=");
            if (sp != std::string::npos && sp + 5 < line.size()) {
                const auto q = detail::comment_value(line, "q");
                const auto chi = detail::comment_value(line, "chi");
                if (!q || !chi) throw ParseError("L zero list: block header needs q= and chi=", lineno);
                const auto qi = static_cast<std::int64_t>(*q);
                const auto ci = static_cast<std::size_t>(*chi);
                if ((seen_pos || seen_neg) && (qi != z.q || ci != z.chi)) {
                    throw ParseError("L zero list: blocks disagree on q or chi", lineno);
                }
                z.q = qi;
                z.chi = ci;
                const char c = line[sp + 5];
                if (c == '+') {
                    if (seen_pos) throw ParseError("L zero list: duplicate sign=+ block", lineno);
                    sign = 1;
                    seen_pos = true;
                } else if (c == '-') {
                    if (seen_neg) throw ParseError("L zero list: duplicate sign=- block", lineno);
                    sign = -1;
                    seen_neg = true;
                } else {
                    throw ParseError("L zero list: sign must be + or -", lineno);
                }
            }
            continue;
        }
        if (sign == 0) throw ParseError("L zero list: ordinate before any block header", lineno);
        const double g = detail::parse_ordinate(line, lineno);
        auto& dst = sign > 0 ? z.gammas_pos : z.gammas_neg;
        const double v = sign * g;
        if (!dst.empty() && std::abs(v) <= std::abs(dst.back())) {
            throw ParseError("L zero list: ordinates not strictly ascending", lineno);
        }
        dst.push_back(v);
    }
    if (!seen_pos || !seen_neg) throw ParseError("L zero list: missing sign block", lineno);
    if (z.gammas_pos.empty() && z.gammas_neg.empty() && !complete) {
        throw ParseError("L zero list: no ordinates and no complete_to", lineno);
    }
    double last = 0.0;
    if (!z.gammas_pos.empty()) last = std::max(last, z.gammas_pos.back());
    if (!z.gammas_neg.empty()) last = std::max(last, -z.gammas_neg.back());
    z.complete_to = complete.value_or(last);
    if (z.complete_to < last) throw ParseError("L zero list: complete_to below last ordinate", lineno);
    return z;
}

LZeroList load_l_zeros(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("L zero list: cannot open " + path.string(), 0);
    return load_l_zeros(in);
}

}  // namespace signrace
