#ifndef BOED_OPTIM_ROBBINS_MONRO_HPP
#define BOED_OPTIM_ROBBINS_MONRO_HPP

#include "boed/optim/trace.hpp"
#include "boed/util/bounds.hpp"

#include <functional>

namespace boed::optim {

/// Harmonic gain a_k = beta / k, k >= 1: the gains sum to infinity while
/// their squares sum to a finite value.
struct GainSchedule {
  double beta = 1.0;

  double operator()(int k) const { return beta / static_cast<double>(k); }
};

struct RMOptions {
  GainSchedule gain{};
  int max_iters = 50;
  double stall_tol = 1e-4;
  int stall_patience = 5;
  DesignBounds bounds;

  void validate() const;
};

/// Noisy ascent direction at x for iteration k (1-based); each call may draw
/// fresh randomness keyed by k.
using StochasticGradient = std::function<Eigen::VectorXd(const Eigen::VectorXd& x, int k)>;

/// Projected stochastic-approximation ascent
///   x_{k+1} = P(x_k + a_k g(x_k)),
/// stopping once |x_k - x_{k-1}| < stall_tol for stall_patience consecutive
/// iterations or after max_iters gradient draws.
OptimizationTrace robbins_monro(const StochasticGradient& gradient, const Eigen::VectorXd& x0,
                                const RMOptions& options);

}  // namespace boed::optim

#endif  // BOED_OPTIM_ROBBINS_MONRO_HPP
