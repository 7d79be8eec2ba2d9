#include <benchmark/benchmark.h>

#include "ruin/combinatorics.hpp"
#include "ruin/paths.hpp"
#include "ruin/probability.hpp"
#include "ruin/simulator.hpp"

namespace {

static void BM_BallotCount(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ruin::ballot_count(7, n));
}
BENCHMARK(BM_BallotCount)->Arg(10)->Arg(100)->Arg(1000);

static void BM_CatalanConvolution(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ruin::catalan_via_convolution(n));
}
BENCHMARK(BM_CatalanConvolution)->Arg(50)->Arg(200);

static void BM_RecurrenceTable(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(ruin::ballot_table_via_recurrence(50, 200));
}
BENCHMARK(BM_RecurrenceTable)->Unit(benchmark::kMillisecond);

static void BM_Enumerate(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ruin::enumerate_first_passage(2, n));
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(ruin::enumerate_first_passage(2, n).size()));
}
BENCHMARK(BM_Enumerate)->DenseRange(6, 12, 2)->Unit(benchmark::kMillisecond);

static void BM_SeriesExact(benchmark::State& state) {
  const ruin::StepProbability p(mpq_class(state.range(0), 20));
  for (auto _ : state) benchmark::DoNotOptimize(ruin::absorption_series(10, p, 1e-12));
}
BENCHMARK(BM_SeriesExact)->Arg(2)->Arg(9)->Arg(11)->Arg(18)->Unit(benchmark::kMillisecond);

static void BM_SeriesFloatCritical(benchmark::State& state) {
  const ruin::StepProbability p(0.5);
  for (auto _ : state) benchmark::DoNotOptimize(ruin::absorption_series(2, p, 1e-12));
}
BENCHMARK(BM_SeriesFloatCritical)->Unit(benchmark::kMillisecond);

static void BM_RunWalk(benchmark::State& state) {
  const double p = static_cast<double>(state.range(0)) / 100.0;
  std::uint64_t trial = 0;
  for (auto _ : state) {
    auto rng = ruin::trial_stream(1, trial++);
    benchmark::DoNotOptimize(ruin::run_walk(1, p, 100000, rng));
  }
}
BENCHMARK(BM_RunWalk)->Arg(40)->Arg(50)->Arg(60);

}  // namespace
BENCHMARK_MAIN();
