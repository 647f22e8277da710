#include <benchmark/benchmark.h>

#include <vector>

#include "signrace/explicit_formula.hpp"
#include "signrace/sieve.hpp"
#include "signrace/zeta_zeros.hpp"

using namespace signrace;

namespace {

const ZeroList& zeros_1000() {
    static const ZeroList z = compute_zeros(1000.0);
    return z;
}

std::vector<double> t_grid(std::size_t n) {
    std::vector<double> ts(n);
    for (std::size_t i = 0; i < n; ++i) ts[i] = 2.0 + 0.01 * static_cast<double>(i);
    return ts;
}

void bm_census(benchmark::State& state) {
    const std::int64_t x = state.range(0);
    const std::int64_t cp[] = {x};
    for (auto _ : state) benchmark::DoNotOptimize(census(4, x, cp));
}

void bm_pi_reference(benchmark::State& state) {
    const std::int64_t x = state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(pi_reference(x));
}

void bm_delta_sweep(benchmark::State& state) {
    const auto series = DeltaSeries::zeta(zeros_1000(), 1000.0);
    const auto ts = t_grid(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(series.sweep(ts));
}

void bm_delta_sweep_serial(benchmark::State& state) {
    const auto series = DeltaSeries::zeta(zeros_1000(), 1000.0);
    const auto ts = t_grid(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(series.sweep_serial(ts));
}

void bm_hardy_z_grid(benchmark::State& state) {
    for (auto _ : state) {
        double acc = 0.0;
        for (double t = 1000.0; t < 1010.0; t += 0.01) acc += hardy_z(t);
        benchmark::DoNotOptimize(acc);
    }
}

}  // namespace

BENCHMARK(bm_census)->Arg(1'000'000)->Arg(100'000'000)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_pi_reference)->Arg(1'000'000)->Arg(100'000'000)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_delta_sweep)->Arg(4096)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_delta_sweep_serial)->Arg(4096)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_hardy_z_grid)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
