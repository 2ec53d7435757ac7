#include <benchmark/benchmark.h>

#include "flicker/analytics.hpp"
#include "flicker/equilibria.hpp"
#include "flicker/random.hpp"
#include "flicker/simulation.hpp"

namespace {

flicker::SimConfig fig4b() {
  flicker::SimConfig cfg;
  cfg.eco.c = 1.95;
  cfg.adapt.l = 0.01;
  cfg.t_max = 50000;
  cfg.burn_in = 5000;
  return cfg;
}

void BM_Philox(benchmark::State& state) {
  flicker::Philox4x32::Counter ctr{0, 0, 0, 0};
  const flicker::Philox4x32::Key key{1, 2};
  for (auto _ : state) {
    ++ctr[0];
    benchmark::DoNotOptimize(flicker::Philox4x32::block(ctr, key));
  }
}
BENCHMARK(BM_Philox);

void BM_NormalSequence(benchmark::State& state) {
  flicker::NormalSequence seq(42, 0);
  for (auto _ : state) benchmark::DoNotOptimize(seq.next(0.0, 0.07));
}
BENCHMARK(BM_NormalSequence);

void BM_Equilibria(benchmark::State& state) {
  flicker::EcoParams p;
  p.c = 1.95;
  for (auto _ : state) benchmark::DoNotOptimize(flicker::equilibria(p));
}
BENCHMARK(BM_Equilibria);

void BM_FoldPoints(benchmark::State& state) {
  const flicker::EcoParams p;
  for (auto _ : state) benchmark::DoNotOptimize(flicker::fold_points(p, 0.0, 4.0, 1e-6));
}
BENCHMARK(BM_FoldPoints)->Unit(benchmark::kMillisecond);

void BM_Trajectory(benchmark::State& state) {
  auto cfg = fig4b();
  for (auto _ : state) benchmark::DoNotOptimize(flicker::run_trajectory(cfg));
  state.SetItemsProcessed(state.iterations() * cfg.t_max);
}
BENCHMARK(BM_Trajectory)->Unit(benchmark::kMillisecond);

void BM_FlickerStats(benchmark::State& state) {
  auto cfg = fig4b();
  const auto tr = flicker::run_trajectory(cfg);
  const double sep = *flicker::separatrix(cfg.eco);
  for (auto _ : state) benchmark::DoNotOptimize(flicker::flicker_stats(tr, sep));
}
BENCHMARK(BM_FlickerStats)->Unit(benchmark::kMillisecond);

void BM_Ensemble(benchmark::State& state) {
  auto cfg = fig4b();
  const auto threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(flicker::run_ensemble(cfg, 8, threads));
}
BENCHMARK(BM_Ensemble)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
