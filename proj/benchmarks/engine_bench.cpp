#include <benchmark/benchmark.h>

#include "camsim/experiments.hpp"
#include "camsim/gemm.hpp"

using namespace camsim;

namespace {

void BM_GenOuter(benchmark::State& state) {
  GemmParams p;
  p.method = GemmMethod::Outer;
  p.tiles = static_cast<std::uint32_t>(state.range(0));
  p.profile = paper_calibrated(GraphFamily::Outer);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gen_outer(p));
  }
}
BENCHMARK(BM_GenOuter)->Arg(8)->Arg(64);

void BM_RunOuterBasic(benchmark::State& state) {
  const auto tiles = static_cast<std::uint32_t>(state.range(0));
  const DelayProfile profile = paper_calibrated(GraphFamily::Outer);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        run_cell(GemmMethod::Outer, tiles, RunConfigKind::Basic, 64, profile));
  }
}
BENCHMARK(BM_RunOuterBasic)->Arg(8)->Arg(32)->Arg(64);

void BM_RunOuterBoth(benchmark::State& state) {
  const auto tiles = static_cast<std::uint32_t>(state.range(0));
  const DelayProfile profile = paper_calibrated(GraphFamily::Outer);
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_cell(GemmMethod::Outer, tiles, RunConfigKind::Both, 64, profile));
  }
}
BENCHMARK(BM_RunOuterBoth)->Arg(64);

void BM_RunInnerBasic(benchmark::State& state) {
  const auto tiles = static_cast<std::uint32_t>(state.range(0));
  const DelayProfile profile = paper_calibrated(GraphFamily::Inner);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        run_cell(GemmMethod::Inner, tiles, RunConfigKind::Basic, 64, profile));
  }
}
BENCHMARK(BM_RunInnerBasic)->Arg(64);

void BM_FullSweep(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(sweep(ExperimentSpec{}));
  }
}
BENCHMARK(BM_FullSweep)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
