#include <benchmark/benchmark.h>

#include "gwp1/functionals.hpp"
#include "gwp1/virasoro.hpp"

using namespace gwp1;

// Fresh engine per iteration: the full recursion down to (g,n).
static void BM_Correlator(benchmark::State& state) {
    const int g = static_cast<int>(state.range(0)), n = static_cast<int>(state.range(1));
    const int threads = static_cast<int>(state.range(2));
    for (auto _ : state) {
        Engine e(RecursionBudget{2 * g - 2 + n, threads});
        benchmark::DoNotOptimize(e.correlator(g, n));
    }
}
BENCHMARK(BM_Correlator)
    ->Args({0, 5, 1})
    ->Args({1, 3, 1})
    ->Args({2, 1, 1})
    ->Args({2, 2, 1})
    ->Args({2, 2, 4})
    ->Unit(benchmark::kMillisecond);

static void BM_Descendants(benchmark::State& state) {
    Engine e;
    e.correlator(2, 3);
    const std::vector<Insertion> ins{{2, 1}, {3, 0}, {4, 1}};
    for (auto _ : state) benchmark::DoNotOptimize(descendants(e, 2, ins));
}
BENCHMARK(BM_Descendants);

static void BM_VirasoroSlice(benchmark::State& state) {
    SweepConfig cfg;
    cfg.k_max = 2;
    cfg.g_max = 1;
    cfg.partners_max = 2;
    cfg.b_max = static_cast<int>(state.range(0));
    for (auto _ : state) {
        Engine e;
        InvariantStore s(e);
        benchmark::DoNotOptimize(virasoro_sweep(cfg, s));
    }
}
BENCHMARK(BM_VirasoroSlice)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

static void BM_LSeries(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(L_series(m));
}
BENCHMARK(BM_LSeries)->Arg(5)->Arg(10)->Arg(20);

static void BM_Gw02(benchmark::State& state) {
    for (auto _ : state)
        for (int b1 = 0; b1 <= 10; ++b1)
            for (int b2 = 0; b1 + b2 <= 10; ++b2) benchmark::DoNotOptimize(gw02_eta(b1, 1, b2, 0));
}
BENCHMARK(BM_Gw02)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
