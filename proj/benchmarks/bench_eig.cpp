#include "boed/eig/estimator.hpp"
#include "boed/models/linear_gaussian.hpp"
#include "boed/models/surrogate_model.hpp"

#include <benchmark/benchmark.h>

#include <memory>
#include <random>

using namespace boed;

namespace {

std::shared_ptr<models::SurrogateModel> random_surrogate() {
  const auto index = polychaos::IndexSet::total_order(4, 4);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-0.1, 0.1);
  Eigen::MatrixXd coef(5, static_cast<Eigen::Index>(index.size()));
  for (Eigen::Index i = 0; i < coef.size(); ++i) coef.data()[i] = u(rng);
  coef.col(0).setConstant(0.5);
  const std::vector<polychaos::AffineMap> maps(4, polychaos::AffineMap{0.5, 0.5});
  return std::make_shared<models::SurrogateModel>(polychaos::PCExpansion(index, coef, maps, 2, false));
}

eig::EIGEstimator estimator(int n) {
  return {random_surrogate(), eig::NoiseModel::uniform(5, 0.1, 0.1), eig::PriorSpec::unit_uniform(2), n, n,
          DesignBounds::unit_box(2)};
}

void BM_EigValue(benchmark::State& state) {
  const auto est = estimator(static_cast<int>(state.range(0)));
  const auto set = eig::draw_sample_set(est, 1);
  const Eigen::Vector2d d(0.3, 0.4);
  for (auto _ : state) benchmark::DoNotOptimize(eig::eig_value(est, d, set));
  state.SetItemsProcessed(state.iterations() * state.range(0) * (state.range(0) + 1));
}
BENCHMARK(BM_EigValue)->Arg(11)->Arg(101)->Unit(benchmark::kMicrosecond);

void BM_EigGradient(benchmark::State& state) {
  const auto est = estimator(static_cast<int>(state.range(0)));
  const auto set = eig::draw_sample_set(est, 1);
  const Eigen::Vector2d d(0.3, 0.4);
  for (auto _ : state) benchmark::DoNotOptimize(eig::eig_gradient(est, d, set));
  state.SetItemsProcessed(state.iterations() * state.range(0) * (state.range(0) + 1));
}
BENCHMARK(BM_EigGradient)->Arg(11)->Arg(101)->Unit(benchmark::kMicrosecond);

void BM_DrawSampleSet(benchmark::State& state) {
  const auto est = estimator(static_cast<int>(state.range(0)));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(eig::draw_sample_set(est, seed++));
}
BENCHMARK(BM_DrawSampleSet)->Arg(101)->Unit(benchmark::kMicrosecond);

}  // namespace
