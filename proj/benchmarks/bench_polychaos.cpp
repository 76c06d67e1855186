#include "boed/polychaos/expansion.hpp"
#include "boed/polychaos/index_set.hpp"
#include "boed/polychaos/legendre.hpp"
#include "boed/polychaos/quadrature.hpp"

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

using namespace boed::polychaos;

namespace {

void BM_LegendreTable(benchmark::State& state) {
  const int degree = static_cast<int>(state.range(0));
  std::vector<double> v(static_cast<std::size_t>(degree + 1)), d(v.size());
  double xi = -0.9;
  for (auto _ : state) {
    legendre_table(degree, xi, v, d);
    benchmark::DoNotOptimize(v.data());
    benchmark::DoNotOptimize(d.data());
    xi = xi > 0.9 ? -0.9 : xi + 1e-3;
  }
}
BENCHMARK(BM_LegendreTable)->Arg(4)->Arg(12);

PCExpansion random_expansion(int degree, int outputs) {
  const auto index = IndexSet::total_order(4, degree);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXd coef(outputs, static_cast<Eigen::Index>(index.size()));
  for (Eigen::Index i = 0; i < coef.size(); ++i) coef.data()[i] = u(rng);
  const std::vector<AffineMap> maps(4, AffineMap{0.5, 0.5});
  return {index, coef, maps, 2, false};
}

void BM_ExpansionEvaluate(benchmark::State& state) {
  const auto pce = random_expansion(static_cast<int>(state.range(0)), 5);
  const Eigen::Vector2d theta(0.3, 0.7), d(0.1, 0.9);
  for (auto _ : state) benchmark::DoNotOptimize(pce.evaluate(theta, d));
}
BENCHMARK(BM_ExpansionEvaluate)->Arg(4)->Arg(8);

void BM_ExpansionGradient(benchmark::State& state) {
  const auto pce = random_expansion(static_cast<int>(state.range(0)), 5);
  const Eigen::Vector2d theta(0.3, 0.7), d(0.1, 0.9);
  Eigen::VectorXd value;
  Eigen::MatrixXd jacobian;
  for (auto _ : state) {
    pce.evaluate_with_gradient(theta, d, value, jacobian);
    benchmark::DoNotOptimize(jacobian.data());
  }
}
BENCHMARK(BM_ExpansionGradient)->Arg(4)->Arg(8);

void BM_SmolyakRule(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(smolyak_quadrature(4, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_SmolyakRule)->Arg(3)->Arg(5);

}  // namespace
