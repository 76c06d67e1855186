#ifndef BOED_UTIL_BOUNDS_HPP
#define BOED_UTIL_BOUNDS_HPP

#include <Eigen/Dense>

#include <random>
#include <stdexcept>

namespace boed {

/// Axis-aligned box [lower, upper] of admissible designs.
struct DesignBounds {
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;

  DesignBounds() = default;
  DesignBounds(Eigen::VectorXd lower_, Eigen::VectorXd upper_)
      : lower(std::move(lower_)), upper(std::move(upper_)) {
    if (lower.size() != upper.size() || lower.size() == 0) {
      throw std::invalid_argument("DesignBounds: lower and upper must be non-empty and equal length");
    }
    if (!((upper - lower).array() > 0.0).all()) {
      throw std::invalid_argument("DesignBounds: every lower bound must be below its upper bound");
    }
  }

  static DesignBounds unit_box(int dimension) {
    return {Eigen::VectorXd::Zero(dimension), Eigen::VectorXd::Ones(dimension)};
  }

  int dimension() const { return static_cast<int>(lower.size()); }

  bool contains(const Eigen::VectorXd& x, double tolerance = 0.0) const {
    return x.size() == lower.size() && (x.array() >= lower.array() - tolerance).all() &&
           (x.array() <= upper.array() + tolerance).all();
  }

  /// Euclidean projection onto the box.
  Eigen::VectorXd project(const Eigen::VectorXd& x) const {
    return x.cwiseMax(lower).cwiseMin(upper);
  }

  template <typename Engine>
  Eigen::VectorXd sample_uniform(Engine& engine) const {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Eigen::VectorXd x(dimension());
    for (int k = 0; k < dimension(); ++k) x[k] = lower[k] + (upper[k] - lower[k]) * unit(engine);
    return x;
  }
};

}  // namespace boed

#endif  // BOED_UTIL_BOUNDS_HPP
