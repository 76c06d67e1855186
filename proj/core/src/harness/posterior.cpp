#include "boed/harness/posterior.hpp"

#include <fmt/format.h>

#include <cmath>
#include <limits>

namespace boed::harness {

namespace {

// Composite trapezoid weights for k equally spaced nodes over [a, b].
Eigen::VectorXd trapezoid(int k, double a, double b) {
  Eigen::VectorXd w = Eigen::VectorXd::Constant(k, (b - a) / (k - 1));
  w[0] *= 0.5;
  w[k - 1] *= 0.5;
  return w;
}

Eigen::VectorXd nodes(int k, double a, double b) {
  Eigen::VectorXd x(k);
  for (int i = 0; i < k; ++i) x[i] = a + (b - a) * static_cast<double>(i) / (k - 1);
  x[k - 1] = b;
  return x;
}

}  // namespace

double PosteriorGrid::integral() const {
  const int kx = static_cast<int>(x_nodes.size());
  const int ky = static_cast<int>(y_nodes.size());
  const auto wx = trapezoid(kx, x_nodes[0], x_nodes[kx - 1]);
  const auto wy = trapezoid(ky, y_nodes[0], y_nodes[ky - 1]);
  return wx.dot(density * wy);
}

PosteriorGrid posterior_map(const models::ForwardModel& model, const eig::NoiseModel& noise,
                            const Eigen::VectorXd& design, const Eigen::VectorXd& observed, int grid_k,
                            const DesignBounds& parameter_box) {
  if (grid_k < 2) throw std::invalid_argument("posterior_map: grid_k must be >= 2");
  if (model.parameter_dimension() != 2 || parameter_box.dimension() != 2) {
    throw std::invalid_argument("posterior_map: needs a two-dimensional parameter");
  }
  if (observed.size() != model.output_dimension()) {
    throw std::invalid_argument(fmt::format("posterior_map: expected {} observations, got {}",
                                            model.output_dimension(), observed.size()));
  }

  PosteriorGrid grid;
  grid.x_nodes = nodes(grid_k, parameter_box.lower[0], parameter_box.upper[0]);
  grid.y_nodes = nodes(grid_k, parameter_box.lower[1], parameter_box.upper[1]);

  Eigen::MatrixXd log_l(grid_k, grid_k);
  double peak = -std::numeric_limits<double>::infinity();
  Eigen::VectorXd theta(2);
  for (int i = 0; i < grid_k; ++i) {
    for (int j = 0; j < grid_k; ++j) {
      theta << grid.x_nodes[i], grid.y_nodes[j];
      log_l(i, j) = eig::log_likelihood(observed, model.value(theta, design), noise);
      peak = std::max(peak, log_l(i, j));
    }
  }
  if (!(std::exp(peak) > 0.0)) {
    throw PosteriorError(fmt::format(
        "posterior_map: likelihood underflows to zero at every grid node (largest log-likelihood {}); "
        "the data are inconsistent with the model over the parameter box",
        peak));
  }

  grid.density = (log_l.array() - peak).exp().matrix();
  const auto wx = trapezoid(grid_k, grid.x_nodes[0], grid.x_nodes[grid_k - 1]);
  const auto wy = trapezoid(grid_k, grid.y_nodes[0], grid.y_nodes[grid_k - 1]);
  const double mass = wx.dot(grid.density * wy);
  grid.density /= mass;
  const double area = (parameter_box.upper - parameter_box.lower).prod();
  grid.log_evidence = peak + std::log(mass) - std::log(area);
  return grid;
}

}  // namespace boed::harness
