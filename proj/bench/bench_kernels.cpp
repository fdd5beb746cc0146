// Parallel kernels against their serial references.
//
//   ./bench_kernels --benchmark_filter=FactorCheck
//   OMP_NUM_THREADS=4 ./bench_kernels

#include <benchmark/benchmark.h>

#include "ortho/maximality.hpp"
#include "ortho/sample.hpp"

namespace {

ortho::Relation gamma_sample(std::size_t frames) {
  return ortho::build_gamma_ort(ortho::GramInnerProduct::identity(3), 3, ortho::SampleCounts{frames, 8, 5, 1});
}

void FactorCheck(benchmark::State& state) {
  const auto rel = gamma_sample(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ortho::factor_check(rel));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(rel.size()));
}

void FactorCheckSerial(benchmark::State& state) {
  const auto rel = gamma_sample(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ortho::factor_check_serial(rel));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(rel.size()));
}

void MaximalitySweep(benchmark::State& state) {
  const auto grid = ortho::enumerate_candidate_grid(2, state.range(0));
  const auto g = ortho::GramInnerProduct::identity(2);
  for (auto _ : state) benchmark::DoNotOptimize(ortho::verify_gamma_ort_maximal(g, grid, state.range(0), 0));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(grid.size()));
}

void MaximalitySweepSerial(benchmark::State& state) {
  const auto grid = ortho::enumerate_candidate_grid(2, state.range(0));
  const auto g = ortho::GramInnerProduct::identity(2);
  for (auto _ : state) benchmark::DoNotOptimize(ortho::verify_gamma_ort_maximal_serial(g, grid, state.range(0), 0));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(grid.size()));
}

}  // namespace

BENCHMARK(FactorCheck)->Arg(64)->Arg(512)->Arg(4096)->Unit(benchmark::kMicrosecond);
BENCHMARK(FactorCheckSerial)->Arg(64)->Arg(512)->Arg(4096)->Unit(benchmark::kMicrosecond);
BENCHMARK(MaximalitySweep)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(MaximalitySweepSerial)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
