#include "boed/eig/estimator.hpp"
#include "boed/models/linear_gaussian.hpp"
#include "boed/optim/saa.hpp"

#include "../oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <memory>

using namespace boed;
using namespace boed::optim;

namespace {

eig::EIGEstimator oracle_estimator(int n, int m) {
  return {std::make_shared<models::LinearGaussianModel>(0.5), eig::NoiseModel::uniform(1, 0.5, 0.0),
          eig::PriorSpec::standard_normal(1), n, m, DesignBounds::unit_box(1)};
}

// Non-finite output once the sensor passes d = 0.6.
class Cliff final : public models::ForwardModel {
 public:
  int parameter_dimension() const override { return 1; }
  int design_dimension() const override { return 1; }
  int output_dimension() const override { return 1; }
  Eigen::VectorXd value(const Eigen::VectorXd& theta, const Eigen::VectorXd& d) const override {
    if (d[0] > 0.6) return Eigen::VectorXd::Constant(1, std::numeric_limits<double>::quiet_NaN());
    return Eigen::VectorXd::Constant(1, d[0] * theta[0]);
  }
  bool has_design_gradient() const override { return true; }
  void value_and_design_gradient(const Eigen::VectorXd& theta, const Eigen::VectorXd& d, Eigen::VectorXd& v,
                                 Eigen::MatrixXd& j) const override {
    v = value(theta, d);
    j = Eigen::MatrixXd::Constant(1, 1, theta[0]);
  }
};

}  // namespace

TEST_CASE("default N prime") {
  CHECK(default_n_prime(1) == 10);
  CHECK(default_n_prime(11) == 110);
  CHECK(default_n_prime(101) == 1001);
  CHECK(default_n_prime(1001) == 1002);
}

TEST_CASE("model constant in theta: zero objective and zero gap") {
  eig::EIGEstimator est(std::make_shared<models::ParameterFreeModel>(2, Eigen::Vector2d(0.2, 0.7),
                                                                      Eigen::MatrixXd::Identity(2, 2)),
                        eig::NoiseModel::uniform(2, 0.1, 0.1), eig::PriorSpec::unit_uniform(2), 10, 5,
                        DesignBounds::unit_box(2));
  SAAOptions opts;
  opts.replicates = 4;
  opts.seed = 1;
  const auto result = saa_optimize(est, opts);
  CHECK(result.upper == 0.0);
  for (const auto& r : result.replicates) {
    CHECK_FALSE(r.failed);
    CHECK(r.optimum == 0.0);
    CHECK(r.lower == 0.0);
    CHECK(r.gap.gap == 0.0);
  }
}

TEST_CASE("linear gaussian oracle: every optimum at the upper bound") {
  SAAOptions opts;
  opts.replicates = 20;
  opts.seed = 31;
  const auto result = saa_optimize(oracle_estimator(101, 101), opts);
  for (const auto& r : result.replicates) {
    REQUIRE_FALSE(r.failed);
    CHECK(r.trace.final_design()[0] == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("gap is upper minus lower") {
  SAAOptions opts;
  opts.replicates = 6;
  opts.seed = 5;
  const auto result = saa_optimize(oracle_estimator(11, 11), opts);
  CHECK(result.n_prime == default_n_prime(11));
  double mean = 0.0;
  for (const auto& r : result.replicates) mean += r.optimum;
  mean /= 6.0;
  CHECK(result.upper == doctest::Approx(mean).epsilon(1e-14));
  for (const auto& r : result.replicates) {
    CHECK(r.gap.upper == result.upper);
    CHECK(r.gap.lower == r.lower);
    CHECK(r.gap.gap == r.gap.upper - r.gap.lower);
    CHECK(r.gap.variance == doctest::Approx(result.upper_variance + r.lower_variance));
    CHECK(r.gap.variance > 0.0);
  }
}

TEST_CASE("replicates are reproducible and worker independent") {
  SAAOptions opts;
  opts.replicates = 5;
  opts.seed = 77;
  const auto a = saa_optimize(oracle_estimator(15, 9), opts);
  opts.workers = 4;
  const auto b = saa_optimize(oracle_estimator(15, 9), opts);
  CHECK(a.upper == b.upper);
  for (std::size_t t = 0; t < a.replicates.size(); ++t) {
    const auto& x = a.replicates[t].trace;
    const auto& y = b.replicates[t].trace;
    REQUIRE(x.iterates.size() == y.iterates.size());
    for (std::size_t k = 0; k < x.iterates.size(); ++k) CHECK(x.iterates[k] == y.iterates[k]);
    CHECK(a.replicates[t].lower == b.replicates[t].lower);
  }
  const auto s0 = saa_seeds(77, 0);
  const auto s1 = saa_seeds(77, 1);
  CHECK(s0.frozen != s0.lower);
  CHECK(s0.frozen != s1.frozen);
}

TEST_CASE("mean of replicate optima is not below the true optimum") {
  // one-sided test at level 0.01 over independent batches
  const double exact = 0.5 * std::log(1.0 + 1.0 / 0.25);
  std::vector<double> excess;
  for (int batch = 0; batch < 30; ++batch) {
    SAAOptions opts;
    opts.replicates = 5;
    opts.seed = 1000 + static_cast<std::uint64_t>(batch);
    excess.push_back(saa_optimize(oracle_estimator(30, 30), opts).upper - exact);
  }
  const auto [mean, se, var_] = oracle::mean_se(excess);
  MESSAGE("mean excess " << mean << " se " << se);
  CHECK(mean + 2.326 * se >= 0.0);
}

TEST_CASE("failed replicates are recorded, not fatal") {
  eig::EIGEstimator est(std::make_shared<Cliff>(), eig::NoiseModel::uniform(1, 0.5, 0.0),
                        eig::PriorSpec::standard_normal(1), 10, 10, DesignBounds::unit_box(1));
  SAAOptions opts;
  opts.replicates = 12;
  opts.seed = 3;
  const auto result = saa_optimize(est, opts);
  int failed = 0;
  double sum = 0.0;
  for (const auto& r : result.replicates) {
    if (r.failed) {
      ++failed;
      CHECK_FALSE(r.error.empty());
    } else {
      sum += r.optimum;
    }
  }
  CHECK(failed > 0);
  REQUIRE(failed < 12);
  CHECK(result.upper == doctest::Approx(sum / (12 - failed)));
}
