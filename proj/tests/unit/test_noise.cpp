#include "boed/eig/noise.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

using boed::eig::NoiseModel;
using boed::eig::log_likelihood;

TEST_CASE("sigma is floor plus proportional term") {
  const auto noise = NoiseModel::uniform(3, 0.1, 0.2);
  Eigen::VectorXd g(3);
  g << 0.0, -2.0, 0.5;
  const Eigen::VectorXd s = noise.sigma(g);
  CHECK(s[0] == doctest::Approx(0.1));
  CHECK(s[1] == doctest::Approx(0.5));
  CHECK(s[2] == doctest::Approx(0.2));
  CHECK_FALSE(noise.constant());
  CHECK(NoiseModel::uniform(2, 1.0, 0.0).constant());
}

TEST_CASE("noise rejects non-positive floor") {
  CHECK_THROWS(NoiseModel::uniform(2, 0.0, 0.1));
  CHECK_THROWS(NoiseModel::uniform(2, 0.1, -0.1));
  CHECK_THROWS(NoiseModel(Eigen::VectorXd::Ones(2), Eigen::VectorXd::Zero(3)));
}

TEST_CASE("zero residual with unit sigma") {
  const auto noise = NoiseModel::uniform(4, 1.0, 0.0);
  Eigen::VectorXd g(4);
  g << 0.3, -1.0, 2.0, 0.0;
  CHECK(log_likelihood(g, g, noise) == doctest::Approx(-2.0 * std::log(2.0 * std::numbers::pi)));
}

TEST_CASE("one-sigma residual") {
  const auto noise = NoiseModel::uniform(1, 0.1, 0.1);
  Eigen::VectorXd g(1), y(1);
  g << 2.0;
  const double sigma = 0.1 + 0.1 * 2.0;
  y << 2.0 + sigma;
  CHECK(log_likelihood(y, g, noise) ==
        doctest::Approx(-std::log(std::sqrt(2.0 * std::numbers::pi) * sigma) - 0.5));
}

TEST_CASE("five outputs match a density product") {
  const auto noise = NoiseModel::uniform(5, 0.1, 0.1);
  Eigen::VectorXd g(5), y(5);
  g << 0.05, 0.31, 0.62, 0.58, 0.0;
  y << 0.11, 0.25, 0.70, 0.41, -0.07;
  double product = 1.0;
  for (int c = 0; c < 5; ++c) {
    const double sigma = 0.1 + 0.1 * std::abs(g[c]);
    const double r = (y[c] - g[c]) / sigma;
    product *= std::exp(-0.5 * r * r) / (std::sqrt(2.0 * std::numbers::pi) * sigma);
  }
  CHECK(log_likelihood(y, g, noise) == doctest::Approx(std::log(product)).epsilon(1e-13));
}

TEST_CASE("log likelihood input checks") {
  const auto noise = NoiseModel::uniform(2, 0.1, 0.1);
  Eigen::VectorXd g = Eigen::VectorXd::Zero(2);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(2);
  y[0] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS(log_likelihood(y, g, noise));
  CHECK_THROWS(log_likelihood(Eigen::VectorXd::Zero(3), g, noise));
  g[1] = std::numeric_limits<double>::infinity();
  CHECK_THROWS(log_likelihood(Eigen::VectorXd::Zero(2), g, noise));
}
