#include "boed/eig/noise.hpp"

#include "detail.hpp"

#include <cmath>
#include <stdexcept>

namespace boed::eig {

NoiseModel::NoiseModel(Eigen::VectorXd alpha, Eigen::VectorXd beta)
    : alpha_(std::move(alpha)), beta_(std::move(beta)) {
  if (alpha_.size() == 0 || alpha_.size() != beta_.size()) {
    throw std::invalid_argument("NoiseModel: alpha and beta must be non-empty and equal length");
  }
  if (!alpha_.allFinite() || !beta_.allFinite() || !(alpha_.array() > 0.0).all() ||
      !(beta_.array() >= 0.0).all()) {
    throw std::invalid_argument("NoiseModel: need alpha > 0 and beta >= 0");
  }
}

NoiseModel NoiseModel::uniform(int outputs, double alpha, double beta) {
  return {Eigen::VectorXd::Constant(outputs, alpha), Eigen::VectorXd::Constant(outputs, beta)};
}

double log_likelihood(const Eigen::VectorXd& y, const Eigen::VectorXd& model_output,
                      const NoiseModel& noise) {
  if (y.size() != noise.outputs() || model_output.size() != noise.outputs()) {
    throw std::invalid_argument("log_likelihood: size mismatch");
  }
  if (!y.allFinite() || !model_output.allFinite()) {
    throw std::domain_error("log_likelihood: non-finite input");
  }
  return detail::log_likelihood(y, model_output, noise.alpha(), noise.beta());
}

}  // namespace boed::eig
