#ifndef BOED_EIG_NOISE_HPP
#define BOED_EIG_NOISE_HPP

#include <Eigen/Dense>

namespace boed::eig {

/// Independent Gaussian observation error with standard deviation
/// sigma_c = alpha_c + beta_c |G_c| per output: a noise floor plus a term
/// proportional to the signal.
class NoiseModel {
 public:
  NoiseModel(Eigen::VectorXd alpha, Eigen::VectorXd beta);

  /// Same (alpha, beta) on every one of `outputs` components.
  static NoiseModel uniform(int outputs, double alpha, double beta);

  int outputs() const { return static_cast<int>(alpha_.size()); }
  const Eigen::VectorXd& alpha() const { return alpha_; }
  const Eigen::VectorXd& beta() const { return beta_; }
  bool constant() const { return (beta_.array() == 0.0).all(); }

  Eigen::VectorXd sigma(const Eigen::VectorXd& model_output) const {
    return alpha_ + beta_.cwiseProduct(model_output.cwiseAbs());
  }

 private:
  Eigen::VectorXd alpha_;
  Eigen::VectorXd beta_;
};

/// ln f(y | G) = sum_c [ -ln(sqrt(2 pi) sigma_c) - (y_c - G_c)^2 / (2 sigma_c^2) ].
/// Throws on non-finite input or mismatched sizes.
double log_likelihood(const Eigen::VectorXd& y, const Eigen::VectorXd& model_output,
                      const NoiseModel& noise);

}  // namespace boed::eig

#endif  // BOED_EIG_NOISE_HPP
