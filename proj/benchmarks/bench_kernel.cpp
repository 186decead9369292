#include <benchmark/benchmark.h>

#include "wanderer/fredholm.hpp"
#include "wanderer/kernel.hpp"
#include "wanderer/moments.hpp"

using namespace wanderer;

static void BM_KernelPoint(benchmark::State& state) {
    const Kernel k(pos_params({2, 1}, {1}));
    const double dt = static_cast<double>(state.range(0)) / 10.0;
    for (auto _ : state) benchmark::DoNotOptimize(k(0.0, 0.3, dt, -0.4));
}
BENCHMARK(BM_KernelPoint)->Arg(0)->Arg(5)->Unit(benchmark::kMicrosecond);

static void BM_EqualTimeMatrix(benchmark::State& state) {
    const Kernel k(pos_params({1}));
    std::vector<double> xs;
    for (int i = 0; i < state.range(0); ++i) xs.push_back(-2.0 + 8.0 * i / static_cast<double>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(k.equal_time_matrix(0.0, xs).sum());
}
BENCHMARK(BM_EqualTimeMatrix)->Arg(24)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_GapProbability(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(gap_probability(0.0, -1.0, zero_params()).probability);
}
BENCHMARK(BM_GapProbability)->Unit(benchmark::kMillisecond);

static void BM_FirstMoment(benchmark::State& state) {
    const ParamSet p = pos_params({1});
    for (auto _ : state) benchmark::DoNotOptimize(first_moment(-3.0, 4.0, p));
}
BENCHMARK(BM_FirstMoment)->Unit(benchmark::kMillisecond);
