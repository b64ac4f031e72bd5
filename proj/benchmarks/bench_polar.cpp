#include <benchmark/benchmark.h>

#include <random>

#include "rankguard/leakage.hpp"
#include "rankguard/polar.hpp"

using namespace rankguard;

static void BM_encode(benchmark::State& state) {
    const auto N = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 gen(7);
    std::vector<std::uint8_t> u(N);
    for (auto& b : u) b = static_cast<std::uint8_t>(gen() & 1u);
    for (auto _ : state) benchmark::DoNotOptimize(encode(u));
    state.SetItemsProcessed(state.iterations() * N);
}
BENCHMARK(BM_encode)->Arg(1024)->Arg(4096)->Arg(65536);

static void BM_reliability(benchmark::State& state) {
    const auto n = static_cast<unsigned>(state.range(0));
    const std::vector<double> delta(std::size_t(1) << n, 0.4);
    for (auto _ : state) benchmark::DoNotOptimize(bec_reliability(n, delta));
}
BENCHMARK(BM_reliability)->Arg(10)->Arg(14)->Arg(18);

static void BM_polar_transform(benchmark::State& state) {
    const auto n = static_cast<unsigned>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(polar_transform(n));
}
BENCHMARK(BM_polar_transform)->Arg(8)->Arg(10)->Arg(12);

static void BM_build_extractor(benchmark::State& state) {
    const auto n = static_cast<unsigned>(state.range(0));
    const std::size_t N = std::size_t(1) << n;
    const auto code = build_code(n, std::vector<double>(N, 0.5), 0.5);
    const BitMatrix g = polar_transform(n);
    std::vector<std::size_t> p;
    for (std::size_t i = 1; i <= N; i += 2) p.push_back(i);
    for (auto _ : state) benchmark::DoNotOptimize(build_extractor(g, code, p));
    state.SetLabel("half the coordinates published");
}
BENCHMARK(BM_build_extractor)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);
