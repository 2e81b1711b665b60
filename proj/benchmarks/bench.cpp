#include <nestord/fprec.hpp>
#include <nestord/index.hpp>
#include <nestord/representability.hpp>

#include <benchmark/benchmark.h>

using namespace nestord;

// Each iteration uses a fresh solver so no memo survives between runs.
static void BM_no_rec_full_cube(benchmark::State & state)
{
    const auto f = families::full_cube(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        RecursiveIndex solver;
        benchmark::DoNotOptimize(solver.value(f));
    }
}
BENCHMARK(BM_no_rec_full_cube)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

static void BM_no_rec_problem2(benchmark::State & state)
{
    const auto f = families::problem2();
    for (auto _ : state) {
        RecursiveIndex solver;
        benchmark::DoNotOptimize(solver.value(f));
    }
}
BENCHMARK(BM_no_rec_problem2)->Unit(benchmark::kMillisecond);

static void BM_no_direct_full_cube(benchmark::State & state)
{
    const auto f = families::full_cube(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(no_direct(f).value);
}
BENCHMARK(BM_no_direct_full_cube)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

static void BM_canonicalize(benchmark::State & state)
{
    const auto f = fprec(PrecOrder::usual(static_cast<int>(state.range(0))));
    for (auto _ : state)
        benchmark::DoNotOptimize(canonical_key(f));
}
BENCHMARK(BM_canonicalize)->DenseRange(4, 7)->Unit(benchmark::kMicrosecond);

static void BM_search_orders_exhausted(benchmark::State & state)
{
    const auto f = fprec(PrecOrder::usual(5));
    for (auto _ : state)
        benchmark::DoNotOptimize(search_orders(f, 2).prefixes_examined);
}
BENCHMARK(BM_search_orders_exhausted)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
