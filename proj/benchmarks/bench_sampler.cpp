#include <benchmark/benchmark.h>

#include "wanderer/scaling.hpp"
#include "wanderer/schur_sampler.hpp"

using namespace wanderer;

static void BM_SampleTop(benchmark::State& state) {
    const std::size_t N = static_cast<std::size_t>(state.range(0));
    const std::size_t K = static_cast<std::size_t>(state.range(1));
    const auto seq = build_parameter_sequences(pos_params({1}), 0.5, N, airy_window_M(N, 0.5, 2.25));
    const SamplerConfig cfg = seq.config();
    std::uint64_t s = 0;
    for (auto _ : state) benchmark::DoNotOptimize(sample_schur_top(cfg, NoiseField(s++), K).values.data());
    state.counters["cells"] = benchmark::Counter(static_cast<double>(seq.M * N * K), benchmark::Counter::kIsIterationInvariantRate);
}
BENCHMARK(BM_SampleTop)->Args({250, 3})->Args({500, 1})->Args({500, 3})->Args({1000, 3})->Unit(benchmark::kMillisecond);

static void BM_SampleSmallFull(benchmark::State& state) {
    const SamplerConfig cfg{2, 2, {0.3, 0.4}, {0.2, 0.5}};
    std::uint64_t s = 0;
    for (auto _ : state) benchmark::DoNotOptimize(sample_schur(cfg, NoiseField(s++)).data());
}
BENCHMARK(BM_SampleSmallFull);

static void BM_Coupled(benchmark::State& state) {
    const std::size_t N = 500;
    const std::size_t M = default_M(N);
    const auto s0 = build_parameter_sequences(pos_params({2, 1}, {1}), 0.5, N, M);
    const auto s1 = build_parameter_sequences(pos_params({1}), 0.5, N, M);
    std::uint64_t s = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(coupling_violations(sample_coupled(s0.config(), s1.config(), 1, 1, NoiseField(s++), 2)));
}
BENCHMARK(BM_Coupled)->Unit(benchmark::kMillisecond);
