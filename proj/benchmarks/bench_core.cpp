#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "popdyn/initial_profile.hpp"
#include "popdyn/scaling.hpp"
#include "popdyn/solver.hpp"

using namespace popdyn;

namespace {

StateVector spike_state(int m, double alpha, double q) {
  const InitialProfile prof = InitialProfile::make(Family::Symmetric, alpha);
  const NondimProblem problem = make_nondim_problem({4.0, 2.0}, prof, q);
  return sample_initial_state(problem, Grid::uniform(1.0, m));
}

}  // namespace

static void BM_ThomasSolve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::vector<double> lower(n), diag(n), upper(n), rhs(n);
  for (int i = 0; i < n; ++i) {
    lower[i] = i == 0 ? 0.0 : unif(rng);
    upper[i] = i == n - 1 ? 0.0 : unif(rng);
    diag[i] = std::abs(lower[i]) + std::abs(upper[i]) + 0.5;
    rhs[i] = unif(rng);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(thomas_solve(lower, diag, upper, rhs));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_ThomasSolve)->Range(64, 4096)->Complexity(benchmark::oN);

static void BM_Step(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const Grid grid = Grid::uniform(1.0, m);
  StateVector st = spike_state(m, 100.0, 0.9);
  Stepper stepper(grid, {4.0, 2.0});
  for (auto _ : state) {
    benchmark::DoNotOptimize(stepper.advance(st));
  }
  state.SetItemsProcessed(state.iterations() * m);
}
BENCHMARK(BM_Step)->Arg(100)->Arg(200)->Arg(400);

static void BM_StepFractionalExponents(benchmark::State& state) {
  const int m = 200;
  const Grid grid = Grid::uniform(1.0, m);
  const InitialProfile prof = InitialProfile::make(Family::Symmetric, 10.0);
  const NondimProblem problem = make_nondim_problem({3.5, 1.5}, prof, 2.0);
  StateVector st = sample_initial_state(problem, grid);
  Stepper stepper(grid, {3.5, 1.5});
  for (auto _ : state) {
    benchmark::DoNotOptimize(stepper.advance(st));
  }
  state.SetItemsProcessed(state.iterations() * m);
}
BENCHMARK(BM_StepFractionalExponents);

static void BM_ProfileSampling(benchmark::State& state) {
  const InitialProfile prof = InitialProfile::make(Family::Asymmetric, 500.0);
  const NondimProblem problem = make_nondim_problem({4.0, 2.0}, prof, 2.0);
  const Grid grid = Grid::uniform(1.0, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_initial_state(problem, grid));
  }
}
BENCHMARK(BM_ProfileSampling)->Arg(200)->Arg(2000);

static void BM_GammaSolve(benchmark::State& state) {
  const double alpha = static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_gamma(alpha));
  }
}
BENCHMARK(BM_GammaSolve)->Arg(1)->Arg(100)->Arg(500);

static void BM_ClassifyFate(benchmark::State& state) {
  // Supercritical flagship run: classifies through the blow-up guard.
  const InitialProfile prof = InitialProfile::make(Family::Symmetric, 100.0);
  const NondimProblem problem = make_nondim_problem({4.0, 2.0}, prof, 1.1);
  const SolverConfig solver;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        classify_fate(problem, solver.grid_for(problem.L), solver.policy));
  }
}
BENCHMARK(BM_ClassifyFate)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
