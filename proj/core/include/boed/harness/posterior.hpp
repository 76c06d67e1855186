#ifndef BOED_HARNESS_POSTERIOR_HPP
#define BOED_HARNESS_POSTERIOR_HPP

#include "boed/eig/noise.hpp"
#include "boed/models/forward_model.hpp"
#include "boed/util/bounds.hpp"

#include <Eigen/Dense>

#include <stdexcept>

namespace boed::harness {

class PosteriorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Posterior density over a 2-D parameter box on a k x k node grid
/// (boundaries included). density(i, j) sits at (x_nodes[i], y_nodes[j]).
struct PosteriorGrid {
  Eigen::VectorXd x_nodes;
  Eigen::VectorXd y_nodes;
  Eigen::MatrixXd density;
  /// ln of the trapezoidal evidence under the uniform prior.
  double log_evidence = 0.0;

  /// Trapezoidal integral of the density; 1 up to rounding.
  double integral() const;
};

/// Uniform prior on `parameter_box` times the likelihood of `observed`,
/// normalized by trapezoidal quadrature. Throws PosteriorError when the
/// likelihood underflows to zero at every node.
PosteriorGrid posterior_map(const models::ForwardModel& model, const eig::NoiseModel& noise,
                            const Eigen::VectorXd& design, const Eigen::VectorXd& observed,
                            int grid_k, const DesignBounds& parameter_box = DesignBounds::unit_box(2));

}  // namespace boed::harness

#endif  // BOED_HARNESS_POSTERIOR_HPP
