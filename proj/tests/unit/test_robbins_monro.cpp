#include "boed/eig/estimator.hpp"
#include "boed/models/linear_gaussian.hpp"
#include "boed/optim/rm_driver.hpp"
#include "boed/optim/robbins_monro.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <memory>

using namespace boed;
using namespace boed::optim;

namespace {

RMOptions box_options(int dimension, int max_iters) {
  RMOptions o;
  o.max_iters = max_iters;
  o.bounds = DesignBounds::unit_box(dimension);
  return o;
}

}  // namespace

TEST_CASE("harmonic gain") {
  GainSchedule gain{2.0};
  double partial = 0.0;
  double squares = 0.0;
  for (int k = 1; k <= 100000; ++k) {
    if (k > 1) CHECK_MESSAGE(gain(k) < gain(k - 1), "k=" << k);
    partial += gain(k);
    squares += gain(k) * gain(k);
    if (k == 100 || k == 100000) CHECK(partial >= 2.0 * std::log(static_cast<double>(k)));
  }
  // sum of squares bounded by beta^2 pi^2 / 6
  CHECK(squares <= 4.0 * M_PI * M_PI / 6.0);
}

TEST_CASE("default options follow the benchmark") {
  RMOptions o;
  CHECK(o.gain.beta == 1.0);
  CHECK(o.max_iters == 50);
  CHECK(o.stall_patience == 5);
  CHECK(o.stall_tol == 1e-4);
}

TEST_CASE("exact gradient of a concave quadratic") {
  const Eigen::Vector2d target(0.3, 0.65);
  auto opts = box_options(2, 10000);
  opts.stall_tol = 1e-12;
  opts.stall_patience = 20000;
  const auto trace = robbins_monro(
      [&](const Eigen::VectorXd& x, int) -> Eigen::VectorXd { return -2.0 * (x - target); },
      Eigen::Vector2d(0.9, 0.1), opts);
  CHECK(trace.iterations == 10000);
  CHECK((trace.final_design() - target).norm() <= 1e-2);
}

TEST_CASE("zero gradient stalls at the start") {
  auto opts = box_options(2, 50);
  const Eigen::Vector2d x0(0.4, 0.2);
  const auto trace = robbins_monro(
      [](const Eigen::VectorXd& x, int) -> Eigen::VectorXd { return Eigen::VectorXd::Zero(x.size()); }, x0,
      opts);
  CHECK(trace.termination == Termination::position_stalled);
  CHECK(trace.iterations == opts.stall_patience);
  CHECK(trace.final_design() == Eigen::VectorXd(x0));
}

TEST_CASE("iterates stay in the box") {
  auto opts = box_options(2, 200);
  opts.gain.beta = 5.0;
  std::mt19937_64 rng(3);
  std::normal_distribution<double> noise(0.0, 3.0);
  const auto trace = robbins_monro(
      [&](const Eigen::VectorXd&, int) -> Eigen::VectorXd {
        return Eigen::Vector2d(1.0 + noise(rng), -0.5 + noise(rng));
      },
      Eigen::Vector2d(0.5, 0.5), opts);
  for (const auto& x : trace.iterates) CHECK(opts.bounds.contains(x));
  CHECK(trace.step_sizes.size() == static_cast<std::size_t>(trace.iterations));
}

TEST_CASE("non-finite gradient aborts") {
  auto opts = box_options(1, 10);
  CHECK_THROWS(robbins_monro(
      [](const Eigen::VectorXd&, int) -> Eigen::VectorXd {
        return Eigen::VectorXd::Constant(1, std::numeric_limits<double>::quiet_NaN());
      },
      Eigen::VectorXd::Constant(1, 0.5), opts));
  CHECK_THROWS(robbins_monro([](const Eigen::VectorXd& x, int) -> Eigen::VectorXd { return x; },
                             Eigen::VectorXd::Constant(1, 1.5), opts));
  opts.max_iters = 0;
  CHECK_THROWS(opts.validate());
}

TEST_CASE("model constant in theta: every run stays at its start") {
  Eigen::MatrixXd slope(2, 2);
  slope << 1.0, 0.5, -0.3, 2.0;
  eig::EIGEstimator est(std::make_shared<models::ParameterFreeModel>(2, Eigen::Vector2d(1.0, 0.5), slope),
                        eig::NoiseModel::uniform(2, 0.1, 0.1), eig::PriorSpec::unit_uniform(2), 10, 10,
                        DesignBounds::unit_box(2));
  RMRunOptions opts;
  opts.replicates = 6;
  opts.seed = 4;
  const auto runs = rm_optimize(est, opts);
  REQUIRE(runs.size() == 6);
  for (const auto& r : runs) {
    CHECK_FALSE(r.failed);
    CHECK(r.trace.termination == Termination::position_stalled);
    CHECK((r.trace.final_design() - r.trace.iterates.front()).norm() <= 1e-12);
  }
}

TEST_CASE("linear gaussian oracle: runs end near the boundary optimum") {
  eig::EIGEstimator est(std::make_shared<models::LinearGaussianModel>(0.5), eig::NoiseModel::uniform(1, 0.5, 0.0),
                        eig::PriorSpec::standard_normal(1), 101, 101, DesignBounds::unit_box(1));
  RMRunOptions opts;
  opts.replicates = 50;
  opts.seed = 2024;
  const auto runs = rm_optimize(est, opts);
  int near = 0;
  for (const auto& r : runs) {
    REQUIRE_FALSE(r.failed);
    if (std::abs(r.trace.final_design()[0] - 1.0) <= 0.05) ++near;
  }
  MESSAGE(near << " of 50 runs within 0.05 of d = 1");
  CHECK(near >= 45);
}

TEST_CASE("rm_optimize is deterministic and worker independent") {
  eig::EIGEstimator est(std::make_shared<models::LinearGaussianModel>(0.5), eig::NoiseModel::uniform(1, 0.5, 0.0),
                        eig::PriorSpec::standard_normal(1), 20, 20, DesignBounds::unit_box(1));
  RMRunOptions opts;
  opts.replicates = 5;
  opts.seed = 9;
  const auto a = rm_optimize(est, opts);
  opts.workers = 3;
  const auto b = rm_optimize(est, opts);
  for (std::size_t t = 0; t < a.size(); ++t) {
    REQUIRE(a[t].trace.iterates.size() == b[t].trace.iterates.size());
    for (std::size_t k = 0; k < a[t].trace.iterates.size(); ++k) CHECK(a[t].trace.iterates[k] == b[t].trace.iterates[k]);
    CHECK(a[t].final_value == b[t].final_value);
  }
  CHECK(rm_iteration_seed(9, 0, 1) != rm_iteration_seed(9, 0, 2));
  CHECK(rm_iteration_seed(9, 0, 1) != rm_iteration_seed(9, 1, 1));
}
