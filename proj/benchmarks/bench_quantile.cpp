#include <benchmark/benchmark.h>

#include "wanderer/noise.hpp"
#include "wanderer/trunc_geom.hpp"

using namespace wanderer;

static void BM_QuantileBounded(benchmark::State& state) {
    const TruncGeom d{0, state.range(0), 0.5};
    const NoiseField f(1);
    std::int64_t k = 1;
    for (auto _ : state) benchmark::DoNotOptimize(quantile(d, f(1, 1, k++)));
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_QuantileBounded)->Arg(4)->Arg(64)->Arg(1 << 20);

static void BM_QuantileUnbounded(benchmark::State& state) {
    const TruncGeom d{3, std::nullopt, static_cast<double>(state.range(0)) / 100.0};
    const NoiseField f(2);
    std::int64_t k = 1;
    for (auto _ : state) benchmark::DoNotOptimize(quantile(d, f(1, 1, k++)));
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_QuantileUnbounded)->Arg(10)->Arg(50)->Arg(99);

static void BM_Noise(benchmark::State& state) {
    const NoiseField f(3);
    std::int64_t k = 1;
    for (auto _ : state) benchmark::DoNotOptimize(f(7, 11, k++));
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Noise);
