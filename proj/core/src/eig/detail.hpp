#ifndef BOED_EIG_DETAIL_HPP
#define BOED_EIG_DETAIL_HPP

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

namespace boed::eig::detail {

inline constexpr double kHalfLogTwoPi = 0.91893853320467274178;  // ln sqrt(2 pi)

inline double sign(double v) { return (v > 0.0) - (v < 0.0); }

inline double log_likelihood(const Eigen::VectorXd& y, const Eigen::VectorXd& g,
                             const Eigen::VectorXd& alpha, const Eigen::VectorXd& beta) {
  double sum = 0.0;
  for (Eigen::Index c = 0; c < y.size(); ++c) {
    const double sigma = alpha[c] + beta[c] * std::abs(g[c]);
    const double r = (y[c] - g[c]) / sigma;
    sum += -kHalfLogTwoPi - std::log(sigma) - 0.5 * r * r;
  }
  return sum;
}

}  // namespace boed::eig::detail

#endif  // BOED_EIG_DETAIL_HPP
