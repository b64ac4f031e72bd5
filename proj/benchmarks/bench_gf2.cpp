#include <benchmark/benchmark.h>

#include "rankguard/bit_matrix.hpp"
#include "rankguard/errors.hpp"

using namespace rankguard;

static void BM_rank_square(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const BitMatrix m = random_matrix(n, n, 0x5eed + n);
    for (auto _ : state) benchmark::DoNotOptimize(rank(m));
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_rank_square)->Arg(256)->Arg(1024)->Arg(4096);

static void BM_rank_wide_submatrix(benchmark::State& state) {
    const BitMatrix m = random_matrix(4096, 2048, 0xBEEF);
    for (auto _ : state) benchmark::DoNotOptimize(rank(m));
}
BENCHMARK(BM_rank_wide_submatrix)->Unit(benchmark::kMillisecond);

static void BM_row_reduce(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const BitMatrix m = random_matrix(n / 2, n, 0xABCD + n);
    for (auto _ : state) benchmark::DoNotOptimize(row_reduce(m));
}
BENCHMARK(BM_row_reduce)->Arg(256)->Arg(1024);

static void BM_multiply(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const BitMatrix a = random_matrix(n, n, 1);
    const BitMatrix b = random_matrix(n, n, 2);
    for (auto _ : state) benchmark::DoNotOptimize(multiply(a, b));
}
BENCHMARK(BM_multiply)->Arg(128)->Arg(512)->Arg(1024);

static void BM_invert(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    BitMatrix m = random_matrix(n, n, 3);
    for (auto _ : state) {
        try {
            benchmark::DoNotOptimize(invert(m));
        } catch (const SingularMatrix&) {
        }
    }
}
BENCHMARK(BM_invert)->Arg(256)->Arg(1024);

BENCHMARK_MAIN();
