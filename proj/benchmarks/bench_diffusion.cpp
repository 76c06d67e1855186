#include "boed/models/diffusion.hpp"

#include <benchmark/benchmark.h>

using namespace boed::models;

namespace {

void BM_DiffusionSolve(benchmark::State& state) {
  DiffusionConfig c;
  c.grid_n = static_cast<int>(state.range(0));
  const DiffusionSolver solver(c);
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solver.solve(Eigen::Vector2d(x, 0.4)));
    x = x > 0.9 ? 0.1 : x + 0.01;
  }
}
BENCHMARK(BM_DiffusionSolve)->Arg(25)->Arg(49)->Unit(benchmark::kMillisecond);

void BM_SolverSetup(benchmark::State& state) {
  DiffusionConfig c;
  c.grid_n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(DiffusionSolver(c));
}
BENCHMARK(BM_SolverSetup)->Arg(25)->Unit(benchmark::kMillisecond);

}  // namespace
