#include <benchmark/benchmark.h>

#include "rankguard/selection.hpp"

using namespace rankguard;

static void BM_score_table(benchmark::State& state) {
    const auto n = static_cast<unsigned>(state.range(0));
    const std::size_t N = std::size_t(1) << n;
    const auto code = build_code(n, std::vector<double>(N, 0.5), 0.5);
    const BitMatrix g = polar_transform(n);
    for (auto _ : state) benchmark::DoNotOptimize(score_table(g, code));
}
BENCHMARK(BM_score_table)->Arg(8)->Arg(10)->Arg(12);

static void BM_score_greedy(benchmark::State& state) {
    const auto n = static_cast<unsigned>(state.range(0));
    const std::size_t N = std::size_t(1) << n;
    const auto code = build_code(n, std::vector<double>(N, 0.5), 0.5);
    const BitMatrix g = polar_transform(n);
    for (auto _ : state) benchmark::DoNotOptimize(score_greedy(g, code, N / 2));
    state.SetLabel("k = N/2, exact leakage included");
}
BENCHMARK(BM_score_greedy)->Arg(8)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);

static void BM_brute_force(benchmark::State& state) {
    // Full-rate code: no zero-leakage short circuit, every candidate ranked.
    const auto code = build_code(4, std::vector<double>(16, 0.5), 1.0);
    const BitMatrix g = polar_transform(4);
    const auto k = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(brute_force_min_leakage(g, code, k));
}
BENCHMARK(BM_brute_force)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
