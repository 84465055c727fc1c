#include <benchmark/benchmark.h>

#include "stablepot/killed_potentials.hpp"
#include "stablepot/mc.hpp"
#include "stablepot/params.hpp"
#include "stablepot/reflected_potentials.hpp"
#include "stablepot/special_functions.hpp"

using namespace stablepot;

static void BM_make_params(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(make_params(1.5, 0.4));
}
BENCHMARK(BM_make_params);

static void BM_inc_beta(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(inc_beta(0.3, 0.75, -0.25));
}
BENCHMARK(BM_inc_beta);

static void BM_u1_density(benchmark::State& state) {
  const StableParams p = make_params(1.5, 0.4);
  for (auto _ : state) benchmark::DoNotOptimize(u1_density(p, 0.6, 0.25));
}
BENCHMARK(BM_u1_density);

static void BM_exit_triple_density(benchmark::State& state) {
  const StableParams p = make_params(1.5, 0.4);
  for (auto _ : state)
    benchmark::DoNotOptimize(exit_triple_density(p, 0.5, 0.25, 0.5, 0.5));
}
BENCHMARK(BM_exit_triple_density);

static void BM_r1_density(benchmark::State& state) {
  const StableParams p = make_params(1.5, 0.4);
  for (auto _ : state) benchmark::DoNotOptimize(r1_density(p, 0.3, 0.6));
}
BENCHMARK(BM_r1_density);

static void BM_sample_stable(benchmark::State& state) {
  const StableParams p = make_params(1.5, 0.4);
  std::mt19937_64 rng = path_rng(1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(sample_stable(p, 1e-4, rng));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_sample_stable);

static void BM_simulate_exit(benchmark::State& state) {
  const StableParams p = make_params(1.5, 0.4);
  MCConfig cfg;
  cfg.n_paths = state.range(0);
  cfg.step = 1e-3;
  for (auto _ : state)
    benchmark::DoNotOptimize(simulate_exit(p, 0.5, {0.0, 1.0}, cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_simulate_exit)->Arg(64)->Arg(512);

BENCHMARK_MAIN();
