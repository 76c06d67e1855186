#include "boed/models/linear_gaussian.hpp"

#include <cmath>
#include <stdexcept>

namespace boed::models {

LinearGaussianModel::LinearGaussianModel(double noise_std, double prior_std, int dimension)
    : noise_std_(noise_std), prior_std_(prior_std), dimension_(dimension) {
  if (!(noise_std_ > 0.0)) throw std::invalid_argument("LinearGaussianModel: noise std must be > 0");
  if (!(prior_std_ > 0.0)) throw std::invalid_argument("LinearGaussianModel: prior std must be > 0");
  if (dimension_ < 1) throw std::invalid_argument("LinearGaussianModel: dimension must be >= 1");
}

Eigen::VectorXd LinearGaussianModel::value(const Eigen::VectorXd& theta,
                                           const Eigen::VectorXd& d) const {
  Eigen::VectorXd out(1);
  out[0] = d.dot(theta);
  return out;
}

void LinearGaussianModel::value_and_design_gradient(const Eigen::VectorXd& theta,
                                                    const Eigen::VectorXd& d,
                                                    Eigen::VectorXd& value,
                                                    Eigen::MatrixXd& jacobian) const {
  value.resize(1);
  value[0] = d.dot(theta);
  jacobian = theta.transpose();
}

double LinearGaussianModel::expected_information_gain(const Eigen::VectorXd& d) const {
  const double ratio = prior_std_ / noise_std_;
  return 0.5 * std::log1p(d.squaredNorm() * ratio * ratio);
}

ParameterFreeModel::ParameterFreeModel(int parameter_dimension, Eigen::VectorXd offset,
                                       Eigen::MatrixXd slope)
    : parameter_dimension_(parameter_dimension), offset_(std::move(offset)), slope_(std::move(slope)) {
  if (slope_.rows() != offset_.size()) {
    throw std::invalid_argument("ParameterFreeModel: slope rows must match outputs");
  }
}

Eigen::VectorXd ParameterFreeModel::value(const Eigen::VectorXd&, const Eigen::VectorXd& d) const {
  return offset_ + slope_ * d;
}

void ParameterFreeModel::value_and_design_gradient(const Eigen::VectorXd&, const Eigen::VectorXd& d,
                                                   Eigen::VectorXd& value,
                                                   Eigen::MatrixXd& jacobian) const {
  value = offset_ + slope_ * d;
  jacobian = slope_;
}

}  // namespace boed::models
