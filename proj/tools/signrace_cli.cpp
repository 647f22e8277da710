#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "signrace/almost_period.hpp"
#include "signrace/characters.hpp"
#include "signrace/errors.hpp"
#include "signrace/explicit_formula.hpp"
#include "signrace/l_functions.hpp"
#include "signrace/race.hpp"
#include "signrace/report.hpp"
#include "signrace/sieve.hpp"
#include "signrace/zeta_zeros.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace signrace;

namespace {

// Usage problems detected after parsing (exit code 2).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Common {
    int threads = 0;
    std::uint64_t seed = 20240101;
    std::string out_dir;
    bool quiet = false;
};

void progress(const Common& c, const std::string& msg) {
    if (!c.quiet) std::cerr << "signrace: " << msg << '\n';
}

fs::path prepare_out_dir(const Common& c) {
    fs::path dir = c.out_dir.empty() ? fs::path(".") : fs::path(c.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (!fs::is_directory(dir)) throw UsageError("--out-dir: cannot create " + dir.string());
    return dir;
}

// Opens the artifact up front so an unwritable path fails before long work.
std::ofstream open_artifact(const fs::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw UsageError("cannot write " + path.string());
    return out;
}

std::string fmt_num(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

int status_code(const std::vector<Report>& reports) {
    for (const auto& r : reports) {
        if (r.failed()) return 1;
    }
    return 0;
}

json reports_json(const std::vector<Report>& reports) {
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(r.to_json());
    return arr;
}

ZeroList obtain_zeta_zeros(const Common& c, const std::string& file, double T, const ZeroSearchOptions& opts) {
    if (!file.empty()) {
        progress(c, "loading zeta zeros from " + file);
        auto z = load_zeros(fs::path(file));
        if (T > z.complete_to) {
            throw UsageError("--T " + fmt_num(T) + " exceeds complete_to " + fmt_num(z.complete_to) + " of " + file);
        }
        return z;
    }
    progress(c, "computing zeta zeros to T = " + fmt_num(T));
    return compute_zeros(T, opts);
}

/*
 *  sieve
 */
struct SieveArgs {
    std::int64_t q = 4;
    std::int64_t x_max = 1000000;
    std::int64_t start = 2;
    double ratio = 1.01;
};

int run_sieve(const Common& c, const SieveArgs& a) {
    const auto dir = prepare_out_dir(c);
    const auto path = dir / ("census_q" + std::to_string(a.q) + ".csv");
    auto out = open_artifact(path);
    const auto grid = geometric_checkpoints(a.start, a.x_max, a.ratio);
    progress(c, "sieving to " + std::to_string(a.x_max) + " over " + std::to_string(grid.size()) + " checkpoints");
    const auto census_data = census(a.q, a.x_max, grid);
    write_census_csv(out, census_data);
    json summary = {{"q", a.q},
                    {"x_max", a.x_max},
                    {"checkpoints", grid.size()},
                    {"pi", census_data.pi_total.back()},
                    {"psi", census_data.psi_total.back()},
                    {"census_csv", path.string()}};
    json per = json::object();
    const std::size_t last = grid.size() - 1;
    for (std::size_t j = 0; j < census_data.width(); ++j) {
        per[std::to_string(census_data.residues[j])] = census_data.pi_at(last, j);
    }
    summary["pi_by_residue"] = per;
    std::cout << summary.dump(2) << '\n';
    return 0;
}

/*
 *  race
 */
struct RaceArgs {
    std::int64_t q = 4;
    std::int64_t x_max = 100000;
    std::string kind = "max";
    std::string zeros_file;
    double T = 0.0;
};

int run_race(const Common& c, const RaceArgs& a) {
    const auto dir = prepare_out_dir(c);
    if (a.kind == "max") {
        const std::string stem = "race_q" + std::to_string(a.q);
        auto crossings_out = open_artifact(dir / (stem + "_crossings.csv"));
        auto v_out = open_artifact(dir / (stem + "_V.csv"));
        auto json_out = open_artifact(dir / (stem + ".json"));
        progress(c, "race scan q = " + std::to_string(a.q) + " to " + std::to_string(a.x_max));
        const auto r = race_scan(a.q, a.x_max);
        write_crossings_csv(crossings_out, r);
        write_v_csv(v_out, r);
        const auto j = r.to_json();
        json_out << j.dump(2) << '\n';
        std::cout << j.dump(2) << '\n';
        return 0;
    }
    Report r;
    if (a.kind == "pi-li") {
        std::optional<ZeroList> zeros;
        if (!a.zeros_file.empty()) zeros = load_zeros(fs::path(a.zeros_file));
        if (zeros && a.T > zeros->complete_to) throw UsageError("--T exceeds complete_to of --zeros");
        progress(c, "pi versus li scan to " + std::to_string(a.x_max));
        r = pi_li_race_scan(a.x_max, zeros ? &*zeros : nullptr, a.T);
    } else if (a.kind == "psi") {
        progress(c, "psi race scan q = " + std::to_string(a.q));
        r = psi_race_scan(a.q, a.x_max);
    } else {
        throw UsageError("--kind must be max, pi-li or psi");
    }
    auto out = open_artifact(dir / (r.check + ".json"));
    const auto j = r.to_json();
    out << j.dump(2) << '\n';
    std::cout << j.dump(2) << '\n';
    return r.failed() ? 1 : 0;
}

/*
 *  zeros
 */
struct ZerosArgs {
    bool compute = false;
    bool verify = false;
    bool do_export = false;
    double T = 100.0;
    std::int64_t q = 0;
    std::size_t chi = 0;
    std::string file;
    double step = 0.0;
    double tol = 1e-9;
    double block = 0.0;
    int max_ref = 3;
};

// Every stored ordinate must sit on a sign change of the rotated function and
// the count must equal the argument-principle count at complete_to.
Report verify_zeta_file(const ZeroList& z, double width) {
    std::size_t bad = 0;
    double worst = 0.0;
    for (double g : z.gammas) {
        const double lo = hardy_z(g - width);
        const double hi = hardy_z(g + width);
        if (lo * hi > 0.0) ++bad;
        worst = std::max(worst, std::abs(hardy_z(g)));
    }
    const double n = argument_principle_count(z.complete_to);
    Report r;
    r.check = "zeta_zero_file";
    r.params = {{"complete_to", z.complete_to}, {"bracket", width}};
    r.measured = {{"zeros", z.gammas.size()},
                  {"argument_principle_count", n},
                  {"unbracketed", bad},
                  {"max_abs_Z", worst}};
    r.bound = {{"count_mismatch", 0}};
    r.status = pass_if(bad == 0 && std::abs(n - static_cast<double>(z.gammas.size())) < 0.1);
    return r;
}

Report verify_l_file(const LZeroList& z, double width) {
    // Zeros of an imprimitive character are those of its inducing character.
    const auto ind = inducing_character(CharacterTable::build(z.q), z.chi);
    const auto& table = ind.table;
    const std::size_t chi = ind.index;
    const std::size_t conj = table.conjugate(chi);
    std::size_t bad = 0;
    for (double g : z.gammas_pos) {
        if (rotated_l(g - width, table, chi) * rotated_l(g + width, table, chi) > 0.0) ++bad;
    }
    for (double g : z.gammas_neg) {
        const double t = -g;
        if (rotated_l(t - width, table, conj) * rotated_l(t + width, table, conj) > 0.0) ++bad;
    }
    const double n_pos = l_argument_count(z.complete_to, table, chi);
    const double n_neg = l_argument_count(z.complete_to, table, conj);
    Report r;
    r.check = "l_zero_file";
    r.params = {{"q", z.q}, {"chi", z.chi}, {"complete_to", z.complete_to}, {"bracket", width}};
    r.measured = {{"zeros_pos", z.gammas_pos.size()},
                  {"zeros_neg", z.gammas_neg.size()},
                  {"count_pos", n_pos},
                  {"count_neg", n_neg},
                  {"unbracketed", bad}};
    r.status = pass_if(bad == 0 && std::abs(n_pos - static_cast<double>(z.gammas_pos.size())) < 0.1 &&
                       std::abs(n_neg - static_cast<double>(z.gammas_neg.size())) < 0.1);
    return r;
}

int run_zeros(const Common& c, const ZerosArgs& a) {
    const int modes = static_cast<int>(a.compute) + static_cast<int>(a.verify) + static_cast<int>(a.do_export);
    if (modes != 1) throw UsageError("zeros: give exactly one of --compute, --verify, --export");
    const bool l_mode = a.q != 0;
    const auto dir = prepare_out_dir(c);

    if (a.compute) {
        const std::string name = l_mode ? "lzeros_q" + std::to_string(a.q) + "_chi" + std::to_string(a.chi) + ".txt"
                                        : "zeros_T" + fmt_num(a.T) + ".txt";
        const fs::path path = a.file.empty() ? dir / name : fs::path(a.file);
        auto out = open_artifact(path);
        json summary;
        if (l_mode) {
            if (a.q < 3 || a.q > kLModulusCapacity) throw UsageError("--q must lie in [3, 50]");
            const auto table = CharacterTable::build(a.q);
            if (a.chi >= table.size()) throw UsageError("--chi must be below phi(q)");
            LZeroSearchOptions opts;
            if (a.step > 0) opts.step = a.step;
            if (a.block > 0) opts.block = a.block;
            opts.tolerance = a.tol;
            opts.max_refinements = a.max_ref;
            progress(c, "computing L zeros q = " + std::to_string(a.q) + " chi = " + std::to_string(a.chi));
            const auto z = compute_l_zeros(table, a.chi, a.T, opts);
            save_l_zeros(out, z);
            summary = {{"q", a.q},
                       {"chi", a.chi},
                       {"complete_to", z.complete_to},
                       {"zeros_pos", z.gammas_pos.size()},
                       {"zeros_neg", z.gammas_neg.size()},
                       {"file", path.string()}};
        } else {
            ZeroSearchOptions opts;
            if (a.step > 0) opts.step = a.step;
            if (a.block > 0) opts.block = a.block;
            opts.tolerance = a.tol;
            opts.max_refinements = a.max_ref;
            progress(c, "computing zeta zeros to T = " + fmt_num(a.T));
            const auto z = compute_zeros(a.T, opts);
            save_zeros(out, z);
            summary = {{"complete_to", z.complete_to}, {"zeros", z.gammas.size()}, {"file", path.string()}};
            if (!z.gammas.empty()) summary["first"] = z.gammas.front();
        }
        std::cout << summary.dump(2) << '\n';
        return 0;
    }

    if (a.file.empty()) throw UsageError("--file is required for --verify and --export");
    if (a.verify) {
        Report r;
        if (l_mode) {
            r = verify_l_file(load_l_zeros(fs::path(a.file)), 1e-6);
        } else {
            r = verify_zeta_file(load_zeros(fs::path(a.file)), 1e-6);
        }
        std::cout << r.to_json().dump(2) << '\n';
        return r.failed() ? 1 : 0;
    }

    // export: CSV with one ordinate per row
    const fs::path src(a.file);
    const fs::path path = dir / (src.stem().string() + ".csv");
    auto out = open_artifact(path);
    out.precision(12);
    std::size_t rows = 0;
    if (l_mode) {
        const auto z = load_l_zeros(src);
        out << "gamma\n";
        for (auto it = z.gammas_neg.rbegin(); it != z.gammas_neg.rend(); ++it, ++rows) out << std::fixed << *it << '\n';
        for (double g : z.gammas_pos) {
            out << std::fixed << g << '\n';
            ++rows;
        }
    } else {
        const auto z = load_zeros(src);
        out << "n,gamma\n";
        for (double g : z.gammas) {
            ++rows;
            out << rows << ',' << std::fixed << g << '\n';
        }
    }
    std::cout << json{{"rows", rows}, {"csv", path.string()}}.dump(2) << '\n';
    return 0;
}

/*
 *  constants
 */
struct ConstantsArgs {
    double T = 5000.0;
    std::string zeros_file;
    std::int64_t q = 0;
    bool character_sum = false;
    double bracket_width = 0.004;
};

int run_constants(const Common& c, const ConstantsArgs& a) {
    json out = json::object();
    std::vector<Report> reports;
    if (a.q == 0 || !a.zeros_file.empty()) {
        const auto zeros = obtain_zeta_zeros(c, a.zeros_file, a.T, {});
        const auto b = reciprocal_square_sum(zeros);
        const double exact = reciprocal_square_sum_exact();
        Report r;
        r.check = "reciprocal_square_sum";
        r.params = {{"T", zeros.complete_to}, {"zeros", zeros.gammas.size()}};
        r.measured = {{"lo", b.lo}, {"hi", b.hi}, {"width", b.hi - b.lo}};
        r.bound = {{"closed_form", exact}, {"max_width", a.bracket_width}};
        r.tolerance = a.bracket_width;
        r.status = pass_if(b.lo <= exact && exact <= b.hi && b.hi - b.lo <= a.bracket_width);
        reports.push_back(r);
    }
    if (a.q != 0) {
        if (a.q < 3) throw UsageError("--q must be >= 3");
        const auto table = CharacterTable::build(a.q);
        const auto k = ExplicitFormulaConstants::build(table);
        json rows = json::array();
        for (std::size_t i = 0; i < table.size(); ++i) {
            const auto& ch = k.characters[i];
            rows.push_back({{"chi", i},
                            {"parity", ch.parity},
                            {"conductor", ch.conductor},
                            {"E", ch.E},
                            {"d", ch.d},
                            {"B_re", ch.B.real()},
                            {"B_im", ch.B.imag()}});
        }
        out["B_table"] = {{"q", a.q}, {"characters", rows}};
        if (a.character_sum) {
            for (std::int64_t r = 1; r < a.q; ++r) {
                if (gcd64(r, a.q) == 1) reports.push_back(check_lemma10(a.q, r));
            }
        }
    }
    out["reports"] = reports_json(reports);
    std::cout << out.dump(2) << '\n';
    return status_code(reports);
}

/*
 *  explicit
 */
struct ExplicitArgs {
    double T = 1000.0;
    std::string zeros_file;
    std::vector<std::string> checks = {"residual", "l2", "transfer"};
    std::int64_t q = 4;
    double l_T = 100.0;
    double rms_limit = 0.3;
    int samples = 50;
    int l2_configs = 10;
    double transfer_x = 1e5;
    double integral_x = 0.01;
};

bool wants(const ExplicitArgs& a, const std::string& name) {
    return std::find(a.checks.begin(), a.checks.end(), name) != a.checks.end();
}

// Sample points sit halfway between consecutive prime powers so the sieve
// value is not taken at a jump.
std::vector<double> residual_sample_points(int n, std::mt19937_64& rng) {
    const auto powers = higher_prime_powers(2000);
    std::vector<std::int64_t> jumps(powers.size());
    for (std::size_t i = 0; i < powers.size(); ++i) jumps[i] = powers[i].n;
    for (auto p : small_primes(2000)) jumps.push_back(p);
    std::sort(jumps.begin(), jumps.end());
    std::uniform_real_distribution<double> jitter(-0.25, 0.25);
    std::vector<double> xs;
    for (int i = 0; i < n; ++i) {
        const double frac = n == 1 ? 0.0 : std::clamp((static_cast<double>(i) + jitter(rng)) / (n - 1), 0.0, 1.0);
        const double target = 10.0 * std::pow(100.0, frac);
        auto it = std::upper_bound(jumps.begin(), jumps.end(), static_cast<std::int64_t>(target));
        const double hi = static_cast<double>(*it);
        const double lo = static_cast<double>(*(it - 1));
        xs.push_back(0.5 * (lo + hi));
    }
    return xs;
}

int run_explicit(const Common& c, const ExplicitArgs& a) {
    std::mt19937_64 rng(c.seed);
    std::vector<Report> reports;
    json extra = json::object();
    const bool need_zeta = wants(a, "residual") || wants(a, "l2") || wants(a, "transfer") || wants(a, "small-t");
    std::optional<ZeroList> zeros;
    if (need_zeta) zeros = obtain_zeta_zeros(c, a.zeros_file, a.T, {});

    if (wants(a, "residual")) {
        const auto xs = residual_sample_points(a.samples, rng);
        const auto hi = static_cast<std::int64_t>(std::ceil(xs.back()));
        std::vector<std::int64_t> cps;
        for (double x : xs) cps.push_back(static_cast<std::int64_t>(std::floor(x)));
        cps.erase(std::unique(cps.begin(), cps.end()), cps.end());
        const auto cen = census(3, hi, cps);
        double acc = 0.0;
        for (double x : xs) {
            const auto i = static_cast<std::size_t>(
                std::lower_bound(cps.begin(), cps.end(), static_cast<std::int64_t>(std::floor(x))) - cps.begin());
            const double d = cen.psi_total[i] - psi_via_zeros(x, *zeros, a.T);
            acc += d * d;
        }
        Report r;
        r.check = "explicit_formula_residual";
        r.params = {{"T", a.T}, {"samples", xs.size()}, {"x_range", {10, 1000}}};
        r.measured = {{"rms", std::sqrt(acc / static_cast<double>(xs.size()))}};
        r.bound = {{"rms_limit", a.rms_limit}};
        r.tolerance = a.rms_limit;
        r.status = pass_if(std::sqrt(acc / static_cast<double>(xs.size())) <= a.rms_limit);
        reports.push_back(r);
    }
    if (wants(a, "small-t")) {
        const double d = small_t_l2_distance(*zeros, a.T);
        Report r;
        r.check = "small_t_closed_form";
        r.params = {{"T", a.T}, {"interval", {0.05, 0.65}}};
        r.measured = {{"l2_distance", d}};
        r.bound = {{"limit", 0.02}};
        r.tolerance = 0.02;
        r.status = pass_if(d <= 0.02);
        reports.push_back(r);
    }
    if (wants(a, "l2")) {
        std::uniform_real_distribution<double> ub(0.5, 3.0);
        std::uniform_real_distribution<double> uw(0.001, 1.0 / 36.0 - 1e-4);
        std::uniform_real_distribution<double> uT(20.0, a.T);
        for (int i = 0; i < a.l2_configs; ++i) {
            const double b = ub(rng);
            const double w = uw(rng);
            double T1 = uT(rng);
            double T2 = uT(rng);
            if (T1 > T2) std::swap(T1, T2);
            reports.push_back(l2_truncation_check(b + w, b, *zeros, T1, T2));
        }
    }
    if (wants(a, "transfer")) reports.push_back(lemma6_chain_check(a.transfer_x, *zeros));

    const bool need_l = wants(a, "near-zero") || wants(a, "integral") || wants(a, "l2-character");
    if (need_l) {
        if (a.q < 3 || a.q > kLModulusCapacity) throw UsageError("--q must lie in [3, 50]");
        if (a.l_T > kLHeightCapacity) throw UsageError("--l-T exceeds 200");
        const auto table = CharacterTable::build(a.q);
        const auto zeta_low = compute_zeros(std::max(a.l_T, 10.0));
        std::vector<LZeroList> data;
        data.push_back(principal_zero_list(a.q, zeta_low));
        for (std::size_t k = 1; k < table.size(); ++k) {
            progress(c, "L zeros q = " + std::to_string(a.q) + " chi = " + std::to_string(k));
            data.push_back(compute_l_zeros(table, k, a.l_T));
        }
        if (wants(a, "integral")) {
            for (std::size_t k = 1; k < data.size(); ++k) reports.push_back(lemma12_integral_check(a.integral_x, data[k]));
        }
        if (wants(a, "l2-character")) {
            std::uniform_real_distribution<double> ub(0.5, 3.0);
            std::uniform_real_distribution<double> uw(0.001, 1.0 / 36.0 - 1e-4);
            std::uniform_real_distribution<double> uT(10.0, a.l_T);
            for (std::size_t k = 1; k < data.size(); ++k) {
                const double b = ub(rng);
                double T1 = uT(rng);
                double T2 = uT(rng);
                if (T1 > T2) std::swap(T1, T2);
                reports.push_back(l2_truncation_check(b + uw(rng), b, data[k], T1, T2));
            }
        }
        if (wants(a, "near-zero")) {
            std::vector<double> ts;
            for (int i = 1; i <= 69; ++i) ts.push_back(0.01 * i);
            for (std::int64_t r = 1; r < a.q; ++r) {
                if (gcd64(r, a.q) == 1) reports.push_back(lemma11_neighborhood_check(table, r, ts, data, a.l_T));
            }
        }
    }
    extra["reports"] = reports_json(reports);
    std::cout << extra.dump(2) << '\n';
    return status_code(reports);
}

/*
 *  almost-period
 */
struct AlmostArgs {
    std::vector<double> freqs;
    double eps = 0.1;
    std::size_t n = 1;
    double min_gap = 1.0;
    std::string strategy = "grid";
};

int run_almost(const Common& c, const AlmostArgs& a) {
    const auto dir = prepare_out_dir(c);
    auto out = open_artifact(dir / "almost_period.json");
    AlmostPeriodStrategy s;
    if (a.strategy == "grid") {
        s = AlmostPeriodStrategy::GridScan;
    } else if (a.strategy == "pigeonhole") {
        s = AlmostPeriodStrategy::Pigeonhole;
    } else {
        throw UsageError("--strategy must be grid or pigeonhole");
    }
    progress(c, "searching " + std::to_string(a.n) + " almost periods");
    const auto set = find_almost_periods(a.freqs, a.eps, a.n, a.min_gap, s);
    auto j = set.to_json();
    json norms = json::array();
    for (double si : set.s) {
        std::vector<double> v;
        for (double t : set.freqs) v.push_back(si * t);
        norms.push_back(torus_norm(v));
    }
    j["torus_norms"] = norms;
    out << j.dump(2) << '\n';
    std::cout << j.dump(2) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Prime race and explicit formula experiments"};
    app.require_subcommand(1);
    Common common;
    if (const char* env = std::getenv("SIGNRACE_OUT")) common.out_dir = env;
    app.add_option("--threads", common.threads, "OpenMP worker count (0 keeps the runtime default)")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--seed", common.seed, "Seed for randomized sample placement");
    app.add_option("--out-dir", common.out_dir, "Artifact directory (default $SIGNRACE_OUT or .)");
    app.add_flag("--quiet", common.quiet, "Suppress progress on stderr");

    SieveArgs sieve_args;
    auto* sieve = app.add_subcommand("sieve", "Residue-class census of pi, psi and Pi");
    sieve->add_option("--q", sieve_args.q, "Modulus")->check(CLI::Range(std::int64_t{1}, std::int64_t{1} << 20));
    sieve->add_option("--x-max", sieve_args.x_max, "Upper limit")->check(CLI::Range(std::int64_t{2}, kSieveCapacity));
    sieve->add_option("--start", sieve_args.start, "First checkpoint")->check(CLI::Range(std::int64_t{2}, kSieveCapacity));
    sieve->add_option("--ratio", sieve_args.ratio, "Checkpoint ratio")->check(CLI::Range(1.0001, 100.0));

    RaceArgs race_args;
    auto* race = app.add_subcommand("race", "Prime race scans");
    race->add_option("--q", race_args.q, "Modulus");
    race->add_option("--x-max", race_args.x_max, "Upper limit");
    race->add_option("--kind", race_args.kind, "max, pi-li or psi")->check(CLI::IsMember({"max", "pi-li", "psi"}));
    race->add_option("--zeros", race_args.zeros_file, "Zeta zero file for the pi-li prediction")
        ->check(CLI::ExistingFile);
    race->add_option("--T", race_args.T, "Truncation height for the prediction");

    ZerosArgs zeros_args;
    auto* zeros = app.add_subcommand("zeros", "Compute, verify or export zero lists");
    zeros->add_flag("--compute", zeros_args.compute, "Compute and save zeros");
    zeros->add_flag("--verify", zeros_args.verify, "Re-check a saved zero file");
    zeros->add_flag("--export", zeros_args.do_export, "Export a saved zero file as CSV");
    zeros->add_option("--T", zeros_args.T, "Height");
    zeros->add_option("--q", zeros_args.q, "Modulus for L-function zeros (omit for zeta)");
    zeros->add_option("--chi", zeros_args.chi, "Character index");
    zeros->add_option("--file", zeros_args.file, "Zero file to write or read");
    zeros->add_option("--step", zeros_args.step, "Scan step (0 keeps the default)")->check(CLI::NonNegativeNumber);
    zeros->add_option("--tol", zeros_args.tol, "Ordinate tolerance")->check(CLI::PositiveNumber);
    zeros->add_option("--block", zeros_args.block, "Certification block width (0 keeps the default)")
        ->check(CLI::NonNegativeNumber);
    zeros->add_option("--max-refinements", zeros_args.max_ref, "Grid refinements per block")
        ->check(CLI::NonNegativeNumber);

    ConstantsArgs const_args;
    auto* constants = app.add_subcommand("constants", "Zero-sum bracket, B(chi) table, deviation report");
    constants->add_option("--T", const_args.T, "Zeta zero height for the reciprocal-square bracket");
    constants->add_option("--zeros", const_args.zeros_file, "Zeta zero file")->check(CLI::ExistingFile);
    constants->add_option("--q", const_args.q, "Modulus for the B(chi) table");
    constants->add_flag("--character-sum", const_args.character_sum, "Add the sum over characters deviation report");
    constants->add_option("--max-width", const_args.bracket_width, "Largest accepted bracket width");

    ExplicitArgs expl_args;
    auto* expl = app.add_subcommand("explicit", "Explicit formula residuals and truncation checks");
    expl->add_option("--T", expl_args.T, "Zeta zero height");
    expl->add_option("--zeros", expl_args.zeros_file, "Zeta zero file")->check(CLI::ExistingFile);
    expl->add_option("--checks", expl_args.checks,
                     "Any of residual, small-t, l2, transfer, near-zero, integral, l2-character")
        ->delimiter(',')
        ->check(CLI::IsMember({"residual", "small-t", "l2", "transfer", "near-zero", "integral", "l2-character"}));
    expl->add_option("--q", expl_args.q, "Modulus for the character checks");
    expl->add_option("--l-T", expl_args.l_T, "L-function zero height (at most 200)");
    expl->add_option("--rms-limit", expl_args.rms_limit, "Largest accepted residual RMS");
    expl->add_option("--samples", expl_args.samples, "Residual sample count")->check(CLI::Range(1, 100000));
    expl->add_option("--l2-configs", expl_args.l2_configs, "Random L2 configurations")->check(CLI::Range(0, 10000));
    expl->add_option("--transfer-x", expl_args.transfer_x, "x for the chain check");
    expl->add_option("--integral-x", expl_args.integral_x, "Upper integration limit");

    AlmostArgs ap_args;
    auto* ap = app.add_subcommand("almost-period", "Simultaneous almost periods");
    ap->add_option("--freqs", ap_args.freqs, "Frequencies")->required()->delimiter(',');
    ap->add_option("--eps", ap_args.eps, "Torus radius");
    ap->add_option("--n", ap_args.n, "Number of values");
    ap->add_option("--min-gap", ap_args.min_gap, "Separation between values");
    ap->add_option("--strategy", ap_args.strategy, "grid or pigeonhole")->check(CLI::IsMember({"grid", "pigeonhole"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    if (common.threads > 0) omp_set_num_threads(common.threads);

    try {
        if (sieve->parsed()) return run_sieve(common, sieve_args);
        if (race->parsed()) return run_race(common, race_args);
        if (zeros->parsed()) return run_zeros(common, zeros_args);
        if (constants->parsed()) return run_constants(common, const_args);
        if (expl->parsed()) return run_explicit(common, expl_args);
        if (ap->parsed()) return run_almost(common, ap_args);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << '\n';
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
