// Serial reference vs OpenMP for the trajectory scans and batch simulation.
#include <benchmark/benchmark.h>

#include "ratsys/analysis.hpp"
#include "ratsys/rng.hpp"
#include "ratsys/simulator.hpp"

namespace {

using namespace ratsys;

// linear with rho = 1: the orbit settles on a nonzero period-k limit, so no
// subnormals creep into long trajectories and skew the timings
SystemSpec bench_spec(int m) {
  std::vector<Vec> rows(static_cast<std::size_t>(m), Vec(static_cast<std::size_t>(m), 0.0));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) rows[i][j] = i == j ? 0.5 : 0.5 / (m - 1);
  return SystemSpec::linear(3, Matrix::from_rows(rows));
}

Trajectory bench_trajectory(long horizon, int m) {
  const SystemSpec spec = bench_spec(m);
  Rng rng(42);
  return simulate(spec, random_initial_conditions(rng, spec.k, spec.m, 10.0), horizon).trajectory;
}

void BM_ResidualLinear(benchmark::State& state, Execution exec) {
  const Trajectory traj = bench_trajectory(state.range(0), 8);
  for (auto _ : state) benchmark::DoNotOptimize(residual_linear(traj, traj.spec().A, exec));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_Domination(benchmark::State& state, Execution exec) {
  const Trajectory traj = bench_trajectory(state.range(0), 8);
  for (auto _ : state) benchmark::DoNotOptimize(domination_check(traj, traj.spec().A, 2, 1, exec));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SimulateBatch(benchmark::State& state, Execution exec) {
  const SystemSpec spec = bench_spec(4);
  Rng rng(7);
  std::vector<InitialConditions> inits;
  for (int t = 0; t < 64; ++t) inits.push_back(random_initial_conditions(rng, spec.k, spec.m, 10.0));
  for (auto _ : state) benchmark::DoNotOptimize(simulate_batch(spec, inits, state.range(0), exec));
  state.SetItemsProcessed(state.iterations() * state.range(0) * 64);
}

}  // namespace

BENCHMARK_CAPTURE(BM_ResidualLinear, serial, Execution::kSerial)->Arg(1 << 14)->Arg(1 << 18)->UseRealTime();
BENCHMARK_CAPTURE(BM_ResidualLinear, omp, Execution::kParallel)->Arg(1 << 14)->Arg(1 << 18)->UseRealTime();
BENCHMARK_CAPTURE(BM_Domination, serial, Execution::kSerial)->Arg(1 << 14)->Arg(1 << 18)->UseRealTime();
BENCHMARK_CAPTURE(BM_Domination, omp, Execution::kParallel)->Arg(1 << 14)->Arg(1 << 18)->UseRealTime();
BENCHMARK_CAPTURE(BM_SimulateBatch, serial, Execution::kSerial)->Arg(10000)->UseRealTime();
BENCHMARK_CAPTURE(BM_SimulateBatch, omp, Execution::kParallel)->Arg(10000)->UseRealTime();

BENCHMARK_MAIN();
