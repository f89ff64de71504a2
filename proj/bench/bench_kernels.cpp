// Serial reference vs OpenMP kernels on the grid workloads.

#include "trialopt/kernels.hpp"
#include "trialopt/numeric.hpp"

#include <benchmark/benchmark.h>

using namespace trialopt;

namespace {

const ValuationDistribution kDist{Uniform{0.0, 1.0}};
const AttentionParams kParams{10.0, 0.5, 1.0};

void BM_ProfitSurface(benchmark::State& state) {
    const auto exec = static_cast<kernels::Exec>(state.range(0));
    const auto n = static_cast<std::size_t>(state.range(1));
    const auto Ts = numeric::linspace(0.0, 40.0, n);
    const auto Ps = numeric::linspace(0.05, 0.95, n);
    for (auto _ : state) benchmark::DoNotOptimize(kernels::profit_surface(kDist, kParams, Ts, Ps, exec));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(n * n));
}

void BM_BestResponseCurve(benchmark::State& state) {
    const auto exec = static_cast<kernels::Exec>(state.range(0));
    const auto Ts = numeric::linspace(0.0, 40.0, static_cast<std::size_t>(state.range(1)));
    const SolverConfig config;
    for (auto _ : state) benchmark::DoNotOptimize(kernels::best_response_curve(kDist, kParams, Ts, config, exec));
}

void BM_JointSweep(benchmark::State& state) {
    const auto exec = static_cast<kernels::Exec>(state.range(0));
    std::vector<AttentionParams> runs;
    for (double beta : numeric::logspace(0.01, 100.0, static_cast<std::size_t>(state.range(1))))
        runs.push_back({10.0, beta, 1.0});
    const SolverConfig config;
    for (auto _ : state) benchmark::DoNotOptimize(kernels::joint_sweep(kDist, runs, config, exec));
}

} // namespace

// first arg: 0 = serial, 1 = parallel
BENCHMARK(BM_ProfitSurface)->ArgsProduct({{0, 1}, {64, 256}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BestResponseCurve)->ArgsProduct({{0, 1}, {64}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_JointSweep)->ArgsProduct({{0, 1}, {13}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
