#include "boed/eig/noise.hpp"
#include "boed/harness/config.hpp"
#include "boed/harness/posterior.hpp"
#include "boed/models/diffusion.hpp"
#include "boed/models/linear_gaussian.hpp"

#include <doctest.h>

#include <cmath>

using namespace boed;
using namespace boed::harness;

namespace {

// Injective in theta on the unit square.
class Smooth final : public models::ForwardModel {
 public:
  int parameter_dimension() const override { return 2; }
  int design_dimension() const override { return 1; }
  int output_dimension() const override { return 3; }
  Eigen::VectorXd value(const Eigen::VectorXd& t, const Eigen::VectorXd& d) const override {
    return Eigen::Vector3d(t[0] + d[0], t[1] * t[1], std::sin(t[0] + 2.0 * t[1]));
  }
};

}  // namespace

TEST_CASE("theta-free model gives a uniform posterior") {
  models::ParameterFreeModel model(2, Eigen::Vector2d(0.3, 0.1), Eigen::MatrixXd::Identity(2, 2));
  const auto noise = eig::NoiseModel::uniform(2, 0.1, 0.1);
  const auto post = posterior_map(model, noise, Eigen::Vector2d(0.5, 0.5), Eigen::Vector2d(0.9, 0.4), 21);
  CHECK(post.density.rows() == 21);
  CHECK(post.density.cols() == 21);
  CHECK((post.density.array() - 1.0).abs().maxCoeff() <= 1e-12);
  CHECK(post.integral() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("self-consistent maximum and normalization") {
  Smooth model;
  const auto noise = eig::NoiseModel::uniform(3, 0.05, 0.0);
  const int k = 31;
  const Eigen::VectorXd d = Eigen::VectorXd::Constant(1, 0.2);
  for (auto [i, j] : {std::pair{7, 22}, std::pair{15, 3}, std::pair{29, 30}}) {
    const Eigen::Vector2d theta(i / double(k - 1), j / double(k - 1));
    const auto post = posterior_map(model, noise, d, model.value(theta, d), k);
    Eigen::Index mi = 0, mj = 0;
    post.density.maxCoeff(&mi, &mj);
    CHECK(mi == i);
    CHECK(mj == j);
    CHECK(post.x_nodes[mi] == doctest::Approx(theta[0]));
    CHECK(std::abs(post.integral() - 1.0) <= 1e-3);
  }
}

TEST_CASE("all-zero likelihood is reported") {
  Smooth model;
  const auto noise = eig::NoiseModel::uniform(3, 0.01, 0.0);
  CHECK_THROWS_AS(posterior_map(model, noise, Eigen::VectorXd::Constant(1, 0.0),
                                Eigen::Vector3d(1e3, -1e3, 1e3), 11),
                  PosteriorError);
  CHECK_THROWS(posterior_map(model, noise, Eigen::VectorXd::Constant(1, 0.0), Eigen::Vector3d(0, 0, 0), 1));
}

TEST_CASE("corner sensor: posterior mass on an annulus through the source") {
  ModelSpec spec;
  const auto problem = make_problem(spec);
  models::DiffusionForwardModel direct(spec.diffusion);
  const Eigen::Vector2d source(0.09, 0.22);
  const Eigen::Vector2d sensor(0.0, 0.0);
  const Eigen::VectorXd y = direct.value(source, sensor);
  const int k = 101;
  const auto post = posterior_map(*problem.model, problem.noise, sensor, y, k);
  CHECK(std::abs(post.integral() - 1.0) <= 1e-3);

  const double radius = source.norm();
  const double h = 1.0 / (k - 1);
  double in_band = 0.0, total = 0.0, at_source = 0.0;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      const double w = post.density(i, j) * h * h;
      total += w;
      if (std::abs(std::hypot(post.x_nodes[i], post.y_nodes[j]) - radius) <= 0.08) in_band += w;
    }
  }
  at_source = post.density(9, 22);
  MESSAGE("mass within 0.08 of radius " << radius << ": " << in_band / total);
  CHECK(in_band / total >= 0.8);
  CHECK(at_source >= 0.1 * post.density.maxCoeff());
  // spread along the ring: the mirrored point is about as likely
  CHECK(post.density(22, 9) >= 0.1 * post.density.maxCoeff());
}
