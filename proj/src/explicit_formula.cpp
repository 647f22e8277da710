#include "signrace/explicit_formula.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <unordered_map>

#include "signrace/errors.hpp"
#include "signrace/quadrature.hpp"
#include "signrace/sieve.hpp"
#include "signrace/special.hpp"

namespace signrace {

namespace {

constexpr double kPi = std::numbers::pi;
const double kLog2Pi = std::log(2.0 * kPi);

cplx inv_rho(double g) {
    const double den = 0.25 + g * g;
    return {0.5 / den, -g / den};
}

std::vector<double> ordinates_in(const std::vector<double>& pos, const std::vector<double>& neg, double lo,
                                 double hi) {
    std::vector<double> out;
    for (double g : neg) {
        if (-g > lo && -g < hi) out.push_back(g);
    }
    for (double g : pos) {
        if (g > lo && g < hi) out.push_back(g);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// sum_{j,k} u_j conj_or_not(u_k) * 2 sin(h d)/d with d = g_j +- g_k.  Rows are
// summed in parallel and merged in row order.
double double_sum(const std::vector<double>& g, double a, double b, bool conjugate_pairing) {
    const double m = 0.5 * (a + b);
    const double h = 0.5 * (a - b);
    const std::size_t n = g.size();
    std::vector<cplx> u(n);
    for (std::size_t j = 0; j < n; ++j) u[j] = inv_rho(g[j]) * std::polar(1.0, m * g[j]);
    std::vector<cplx> rows(n);
#pragma omp parallel for schedule(dynamic, 16)
    for (std::size_t j = 0; j < n; ++j) {
        cplx acc = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double d = conjugate_pairing ? g[j] - g[k] : g[j] + g[k];
            const double kern = d == 0.0 ? 2.0 * h : 2.0 * std::sin(h * d) / d;
            acc += (conjugate_pairing ? std::conj(u[k]) : u[k]) * kern;
        }
        rows[j] = u[j] * acc;
    }
    cplx total = 0.0;
    for (const auto& r : rows) total += r;
    return total.real();
}

Report l2_report(const char* name, double quad, double dsum, double envelope, double a, double b, double T1,
                 double T2, std::int64_t q) {
    Report r;
    r.check = name;
    r.params = {{"a", a}, {"b", b}, {"T1", T1}, {"T2", T2}, {"q", q}};
    r.measured = {{"quadrature", quad}, {"double_sum", dsum}, {"difference", std::abs(quad - dsum)}};
    r.bound = {{"agreement", 1e-8}, {"(2/9) log^3(qT1)/T1", envelope}};
    r.tolerance = 1e-8;
    r.status = pass_if(std::abs(quad - dsum) <= 1e-8 && quad <= envelope && dsum <= envelope);
    return r;
}

void check_l2_args(double a, double b, double T1, double T2, double complete_to) {
    if (!(0.0 < b && b < a)) throw DomainError("l2_truncation_check: requires 0 < b < a");
    if (!(a - b < 1.0 / 36.0)) throw DomainError("l2_truncation_check: requires a - b < 1/36");
    if (!(T1 <= T2)) throw DomainError("l2_truncation_check: requires T1 <= T2");
    if (T2 > complete_to) throw DomainError("l2_truncation_check: T2 exceeds complete_to");
    if (!(T1 > 1.0)) throw DomainError("l2_truncation_check: requires T1 > 1");
}

// sum over primes p | q not dividing f of sum_{p^k <= x} chi*(p^k) log p.
cplx missing_prime_powers(double x, std::int64_t q, const CharacterTable* primitive, std::size_t index) {
    cplx s = 0.0;
    for (auto [p, e] : factorize(q)) {
        if (primitive != nullptr && primitive->modulus() % p == 0) continue;
        const double lp = std::log(static_cast<double>(p));
        std::int64_t pk = p;
        for (;;) {
            if (static_cast<double>(pk) > x) break;
            s += (primitive != nullptr ? primitive->value(index, pk) : cplx(1.0)) * lp;
            if (pk > std::numeric_limits<std::int64_t>::max() / p) break;
            pk *= p;
        }
    }
    return s;
}

}  // namespace

// ---------------------------------------------------------------------------
// DeltaSeries
// ---------------------------------------------------------------------------

struct DeltaSeries::Cache {
    std::mutex mutex;
    std::unordered_map<double, cplx> values;
};

DeltaSeries::DeltaSeries(std::vector<double> gammas, double T)
    : gammas_(std::move(gammas)), T_(T), cache_(std::make_shared<Cache>()) {}

DeltaSeries DeltaSeries::zeta(const ZeroList& zeros, double T) {
    if (T > zeros.complete_to) throw DomainError("delta_T: T exceeds complete_to");
    std::vector<double> g;
    for (double x : zeros.gammas) {
        if (x < T) g.push_back(x);
    }
    std::vector<double> all;
    all.reserve(2 * g.size());
    for (auto it = g.rbegin(); it != g.rend(); ++it) all.push_back(-*it);
    all.insert(all.end(), g.begin(), g.end());
    return DeltaSeries(std::move(all), T);
}

DeltaSeries DeltaSeries::character(const LZeroList& zeros, double T) {
    if (T > zeros.complete_to) throw DomainError("delta_T: T exceeds complete_to");
    return DeltaSeries(ordinates_in(zeros.gammas_pos, zeros.gammas_neg, 0.0, T), T);
}

cplx DeltaSeries::operator()(double t) const {
    double re = 0.0;
    double im = 0.0;
    for (double g : gammas_) {
        const double den = 0.25 + g * g;
        const double c = std::cos(t * g);
        const double s = std::sin(t * g);
        // (c + i s)(1/2 - i g)/den
        re += (0.5 * c + g * s) / den;
        im += (0.5 * s - g * c) / den;
    }
    return {re, im};
}

cplx DeltaSeries::cached(double t) const {
    {
        std::lock_guard<std::mutex> lock(cache_->mutex);
        auto it = cache_->values.find(t);
        if (it != cache_->values.end()) return it->second;
    }
    const cplx v = (*this)(t);
    std::lock_guard<std::mutex> lock(cache_->mutex);
    cache_->values.emplace(t, v);
    return v;
}

std::vector<cplx> DeltaSeries::sweep(std::span<const double> ts) const {
    std::vector<cplx> out(ts.size());
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < ts.size(); ++i) out[i] = (*this)(ts[i]);
    return out;
}

std::vector<cplx> DeltaSeries::sweep_serial(std::span<const double> ts) const {
    std::vector<cplx> out(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) out[i] = (*this)(ts[i]);
    return out;
}

double DeltaSeries::abs_bound() const {
    double s = 0.0;
    for (double g : gammas_) s += 1.0 / std::sqrt(0.25 + g * g);
    return s;
}

cplx delta_T(double t, const ZeroList& zeros, double T) {
    return DeltaSeries::zeta(zeros, T)(t);
}

double psi_via_zeros(double x, const ZeroList& zeros, double T) {
    if (!(x > 1.0)) throw DomainError("psi_via_zeros: requires x > 1");
    const double t = std::log(x);
    const double d = DeltaSeries::zeta(zeros, T)(t).real();
    return x - std::sqrt(x) * d - kLog2Pi - 0.5 * std::log1p(-1.0 / (x * x));
}

double small_t_closed_form(double t) {
    if (!(t > 0.0 && t < std::log(2.0))) throw DomainError("small_t_closed_form: requires 0 < t < log 2");
    return std::exp(0.5 * t) - (kLog2Pi + 0.5 * std::log1p(-std::exp(-2.0 * t))) * std::exp(-0.5 * t);
}

double small_t_l2_distance(const ZeroList& zeros, double T, double lo, double hi) {
    const auto series = DeltaSeries::zeta(zeros, T);
    std::vector<double> x, w;
    composite_nodes(lo, hi, 1e-3, 32, x, w);
    const auto v = series.sweep(x);
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = v[i].real() - small_t_closed_form(x[i]);
        acc += w[i] * d * d;
    }
    return std::sqrt(acc / (hi - lo));
}

// ---------------------------------------------------------------------------
// L^2 truncation identities
// ---------------------------------------------------------------------------

double l2_difference_quadrature(const DeltaSeries& lower, const DeltaSeries& upper, double a, double b) {
    std::vector<double> x, w;
    composite_nodes(b, a, 1e-3, 32, x, w);
    const auto hi = upper.sweep(x);
    const auto lo = lower.sweep(x);
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += w[i] * std::norm(hi[i] - lo[i]);
    return acc;
}

double l2_double_sum_zeta(const ZeroList& zeros, double T1, double T2, double a, double b) {
    std::vector<double> pos;
    for (double g : zeros.gammas) {
        if (g >= T1 && g < T2) pos.push_back(g);
    }
    std::vector<double> neg;
    for (double g : pos) neg.push_back(-g);
    return double_sum(ordinates_in(pos, neg, 0.0, T2 + 1.0), a, b, false);
}

double l2_double_sum_character(const LZeroList& zeros, double T1, double T2, double a, double b) {
    std::vector<double> g;
    for (double x : ordinates_in(zeros.gammas_pos, zeros.gammas_neg, 0.0, T2)) {
        if (std::abs(x) >= T1) g.push_back(x);
    }
    return double_sum(g, a, b, true);
}

Report l2_truncation_check(double a, double b, const ZeroList& zeros, double T1, double T2) {
    check_l2_args(a, b, T1, T2, zeros.complete_to);
    const double quad = l2_difference_quadrature(DeltaSeries::zeta(zeros, T1), DeltaSeries::zeta(zeros, T2), a, b);
    const double dsum = l2_double_sum_zeta(zeros, T1, T2, a, b);
    const double env = 2.0 / 9.0 * std::pow(std::log(T1), 3) / T1;
    return l2_report("zeta_l2_truncation", quad, dsum, env, a, b, T1, T2, 1);
}

Report l2_truncation_check(double a, double b, const LZeroList& zeros, double T1, double T2) {
    check_l2_args(a, b, T1, T2, zeros.complete_to);
    const double quad =
        l2_difference_quadrature(DeltaSeries::character(zeros, T1), DeltaSeries::character(zeros, T2), a, b);
    const double dsum = l2_double_sum_character(zeros, T1, T2, a, b);
    const double env = 2.0 / 9.0 * std::pow(std::log(static_cast<double>(zeros.q) * T1), 3) / T1;
    auto r = l2_report("character_l2_truncation", quad, dsum, env, a, b, T1, T2, zeros.q);
    r.params["chi"] = zeros.chi;
    return r;
}

// ---------------------------------------------------------------------------
// Explicit formula for Psi(x, chi)
// ---------------------------------------------------------------------------

ExplicitFormulaConstants ExplicitFormulaConstants::build(const CharacterTable& table) {
    ExplicitFormulaConstants c;
    c.zeta_log_deriv_at_0 = kLog2Pi;
    c.characters.resize(table.size());
    auto& p = c.characters[0];
    p.E = 1;
    p.d = 0;
    p.parity = 0;
    p.conductor = 1;
    p.B = -kLog2Pi;
    for (std::size_t k = 1; k < table.size(); ++k) {
        const auto ind = inducing_character(table, k);
        auto& r = c.characters[k];
        r.E = 0;
        r.parity = table.parity(k);
        r.d = r.parity == 0 ? 1 : 0;
        r.conductor = ind.conductor();
        r.log_derivative_conj = l_log_derivative_at_1(ind.table, ind.table.conjugate(ind.index));
        r.B = -std::log(2.0) - kEulerGamma + std::log(static_cast<double>(r.conductor) / kPi) +
              r.log_derivative_conj;
    }
    return c;
}

double remainder_R(double x, int parity) {
    if (!(x > 1.0)) throw DomainError("remainder_R: requires x > 1");
    double r = 0.5 * std::log1p(-1.0 / (x * x));
    if (parity == 1) r += std::log(x / (x + 1.0));
    return r;
}

cplx psi_chi_via_zeros(double x, const CharacterTable& table, std::size_t k, const LZeroList& zeros,
                       const ExplicitFormulaConstants& constants, double T) {
    if (!(x > 1.0)) throw DomainError("psi_chi_via_zeros: requires x > 1");
    if (zeros.q != table.modulus() || zeros.chi != k) {
        throw DomainError(k == 0 ? "psi_chi_via_zeros: principal character needs the zeta zero list"
                                 : "psi_chi_via_zeros: zero list belongs to another character");
    }
    const auto& c = constants.characters.at(k);
    const cplx d = DeltaSeries::character(zeros, T)(std::log(x));
    cplx v = static_cast<double>(c.E) * x - std::sqrt(x) * d - static_cast<double>(c.d) * std::log(x) -
             remainder_R(x, c.parity) + c.B;
    if (k == 0) {
        v -= missing_prime_powers(x, table.modulus(), nullptr, 0);
    } else if (c.conductor != table.modulus()) {
        const auto ind = inducing_character(table, k);
        v -= missing_prime_powers(x, table.modulus(), &ind.table, ind.index);
    }
    return v;
}

std::complex<double> delta_qa(double t, const CharacterTable& table, std::int64_t a,
                              std::span<const LZeroList> zero_data, double T) {
    if (!table.coprime(a)) throw DomainError("delta_qa: gcd(a, q) > 1");
    if (zero_data.size() != table.size()) throw DomainError("delta_qa: missing zero data for some character");
    cplx s = 0.0;
    for (std::size_t k = 0; k < table.size(); ++k) {
        if (zero_data[k].chi != k || zero_data[k].q != table.modulus()) {
            throw DomainError("delta_qa: zero data out of order");
        }
        s += table.value(k, a) * DeltaSeries::character(zero_data[k], T)(t);
    }
    return s / static_cast<double>(table.phi());
}

double psi_qa_via_zeros(double x, const CharacterTable& table, std::int64_t a, std::span<const LZeroList> zero_data,
                        const ExplicitFormulaConstants& constants, double T) {
    if (!table.coprime(a)) throw DomainError("psi_qa_via_zeros: gcd(a, q) > 1");
    if (zero_data.size() != table.size()) throw DomainError("psi_qa_via_zeros: missing zero data");
    cplx s = 0.0;
    for (std::size_t k = 0; k < table.size(); ++k) {
        s += std::conj(table.value(k, a)) * psi_chi_via_zeros(x, table, k, zero_data[k], constants, T);
    }
    return s.real() / static_cast<double>(table.phi());
}

// ---------------------------------------------------------------------------
// Bound reports
// ---------------------------------------------------------------------------

Report lemma6_chain_check(double x, const ZeroList& zeros) {
    if (!(x >= 1e3)) throw DomainError("lemma6_chain_check: requires x >= 1000");
    const auto n = static_cast<std::int64_t>(std::floor(x));
    const std::int64_t cp[] = {n};
    const auto c = census(3, n, cp);
    const double pi = static_cast<double>(c.pi_total[0]);
    const double psi = c.psi_total[0];
    const double Pi = c.Pi_total[0];
    const double lx = std::log(x);
    const double sum_bound = reciprocal_square_sum(zeros).hi;

    const double r1 = (Pi - li(x)) - (psi - x) / lx;
    const double env1 = (sum_bound / lx + std::pow(x, -1.0 / 6.0) * lx) * std::sqrt(x) / lx;
    const double r2 = pi - Pi + 0.5 * li(std::sqrt(x));
    const double env2 = std::cbrt(x);

    Report r;
    r.check = "psi_to_pi_transfer";
    r.params = {{"x", x}};
    r.measured = {{"pi", pi},           {"psi", psi},   {"Pi", Pi},     {"li", li(x)},
                  {"Pi_minus_li_residual", r1}, {"pi_minus_Pi_residual", r2}, {"sum_inv_rho2_upper", sum_bound}};
    r.bound = {{"Pi_minus_li_envelope", env1}, {"pi_minus_Pi_envelope", env2}};
    r.status = pass_if(std::abs(r1) <= env1 && std::abs(r2) <= env2);
    return r;
}

Report lemma12_integral_check(double x, const LZeroList& zeros) {
    if (!(x > 0.0 && x <= 0.01)) throw DomainError("lemma12_integral_check: requires 0 < x <= 0.01");
    const auto series = DeltaSeries::character(zeros, zeros.complete_to);
    std::vector<double> ts, w;
    composite_nodes(0.0, x, 1e-3, 32, ts, w);
    std::vector<double> both = ts;
    for (double t : ts) both.push_back(-t);
    const auto v = series.sweep(both);
    cplx quad = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) quad += w[i] * (v[i] + v[i + ts.size()]);
    cplx closed = 0.0;
    for (double g : series.ordinates()) closed += inv_rho(g) * 2.0 * std::sin(x * g) / g;
    const double bound = 53.0 * x * std::log(static_cast<double>(zeros.q));
    Report r;
    r.check = "delta_integral_bound";
    r.params = {{"x", x}, {"q", zeros.q}, {"chi", zeros.chi}, {"T", zeros.complete_to}, {"truncated", true}};
    r.measured = {{"re", quad.real()}, {"im", quad.imag()}, {"abs", std::abs(quad)},
                  {"closed_form_abs", std::abs(closed)}, {"quadrature_vs_closed_form", std::abs(quad - closed)}};
    r.bound = {{"53 x log q", bound}};
    r.status = pass_if(std::abs(quad) < bound);
    return r;
}

Report lemma11_neighborhood_check(const CharacterTable& table, std::int64_t a, std::span<const double> ts,
                                  std::span<const LZeroList> zero_data, double T) {
    const std::int64_t q = table.modulus();
    const std::int64_t ar = ((a % q) + q) % q;
    Report r;
    r.check = "delta_near_zero";
    r.params = {{"q", q}, {"a", ar}, {"T", T}, {"grid_points", ts.size()}};
    r.status = Status::ReportOnly;
    double worst = 0.0;
    double worst_t = 0.0;
    nlohmann::json samples = nlohmann::json::array();
    for (double t : ts) {
        if (!(t > 0.0 && t < std::log(2.0))) throw DomainError("lemma11_neighborhood_check: grid must lie in (0, log 2)");
        const cplx d = delta_qa(t, table, ar, zero_data, T);
        double v;
        if (ar == 1) {
            const double main = std::log(static_cast<double>(q)) - 0.5 * std::log1p(-std::exp(-2.0 * t));
            v = d.real() * std::exp(0.5 * t) - main;
            samples.push_back({{"t", t}, {"delta", d.real()}, {"deviation", v}});
        } else {
            v = std::abs(d);
            samples.push_back({{"t", t}, {"abs_delta", v}});
        }
        if (std::abs(v) >= std::abs(worst)) {
            worst = v;
            worst_t = t;
        }
    }
    if (ar == 1) {
        r.measured = {{"max_abs_deviation", std::abs(worst)}, {"at_t", worst_t}, {"samples", samples}};
        r.bound = {{"2 (|theta| <= 1)", 2.0}};
    } else {
        r.measured = {{"max_abs_delta", worst}, {"at_t", worst_t}, {"samples", samples}};
        r.bound = {{"3", 3.0}};
    }
    r.measured["within_formula"] = std::abs(worst) <= (ar == 1 ? 2.0 : 3.0);
    return r;
}

}  // namespace signrace
