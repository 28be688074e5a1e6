#include <benchmark/benchmark.h>

#include "occtime/fracint.hpp"
#include "occtime/kernels.hpp"
#include "occtime/laws.hpp"
#include "occtime/mc.hpp"

using namespace occtime;

static void BM_KernelEval(benchmark::State& state) {
    const LampertiParams params(0.6, 0.35);
    double t = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(g_kernel(params, t, 0));
        t = t < 0.9 ? t + 1e-4 : 0.1;
    }
}
BENCHMARK(BM_KernelEval);

static void BM_KernelJet(benchmark::State& state) {
    const LampertiParams params(0.6, 0.35);
    for (auto _ : state)
        benchmark::DoNotOptimize(g_kernel_derivatives(params, 0.4, 4));
}
BENCHMARK(BM_KernelJet);

static void BM_BridgeCdf(benchmark::State& state) {
    const LampertiParams params(0.6, 0.35);
    for (auto _ : state)
        benchmark::DoNotOptimize(bridge_cdf(params, 0.4, {}));
}
BENCHMARK(BM_BridgeCdf);

static void BM_BridgePdf(benchmark::State& state) {
    const LampertiParams params(0.6, 0.35);
    for (auto _ : state)
        benchmark::DoNotOptimize(bridge_pdf(params, 0.4, {}));
}
BENCHMARK(BM_BridgePdf);

static void BM_Gaussian(benchmark::State& state) {
    mc::Stream rng(1, 0);
    for (auto _ : state) benchmark::DoNotOptimize(rng.next_gaussian());
}
BENCHMARK(BM_Gaussian);

static void BM_BridgePath(benchmark::State& state) {
    mc::PathConfig config;
    config.n_paths = 1;
    config.n_steps = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        config.seed++;
        benchmark::DoNotOptimize(mc::simulate_bridge_occupation(config));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BridgePath)->Arg(1024)->Arg(16384);

BENCHMARK_MAIN();
