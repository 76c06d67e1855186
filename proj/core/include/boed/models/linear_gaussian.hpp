#ifndef BOED_MODELS_LINEAR_GAUSSIAN_HPP
#define BOED_MODELS_LINEAR_GAUSSIAN_HPP

#include "boed/models/forward_model.hpp"

namespace boed::models {

/// Validation oracle G(theta, d) = d . theta with a scalar observation.
///
/// With theta ~ N(0, prior_std^2 I) and additive noise of constant standard
/// deviation `noise_std`, the expected information gain is known exactly:
///   U(d) = 0.5 ln(1 + |d|^2 prior_std^2 / noise_std^2).
class LinearGaussianModel final : public ForwardModel {
 public:
  LinearGaussianModel(double noise_std, double prior_std = 1.0, int dimension = 1);

  int parameter_dimension() const override { return dimension_; }
  int design_dimension() const override { return dimension_; }
  int output_dimension() const override { return 1; }

  Eigen::VectorXd value(const Eigen::VectorXd& theta, const Eigen::VectorXd& d) const override;
  bool has_design_gradient() const override { return true; }
  void value_and_design_gradient(const Eigen::VectorXd& theta, const Eigen::VectorXd& d,
                                 Eigen::VectorXd& value, Eigen::MatrixXd& jacobian) const override;

  double noise_std() const { return noise_std_; }
  double prior_std() const { return prior_std_; }

  double expected_information_gain(const Eigen::VectorXd& d) const;

 private:
  double noise_std_;
  double prior_std_;
  int dimension_;
};

/// A model whose outputs ignore theta: G_c(theta, d) = offset_c + slope_c . d.
/// Data then carry no information about theta, so the expected information
/// gain and its gradient vanish identically.
class ParameterFreeModel final : public ForwardModel {
 public:
  ParameterFreeModel(int parameter_dimension, Eigen::VectorXd offset, Eigen::MatrixXd slope);

  int parameter_dimension() const override { return parameter_dimension_; }
  int design_dimension() const override { return static_cast<int>(slope_.cols()); }
  int output_dimension() const override { return static_cast<int>(offset_.size()); }

  Eigen::VectorXd value(const Eigen::VectorXd& theta, const Eigen::VectorXd& d) const override;
  bool has_design_gradient() const override { return true; }
  void value_and_design_gradient(const Eigen::VectorXd& theta, const Eigen::VectorXd& d,
                                 Eigen::VectorXd& value, Eigen::MatrixXd& jacobian) const override;

 private:
  int parameter_dimension_;
  Eigen::VectorXd offset_;
  Eigen::MatrixXd slope_;
};

}  // namespace boed::models

#endif  // BOED_MODELS_LINEAR_GAUSSIAN_HPP
