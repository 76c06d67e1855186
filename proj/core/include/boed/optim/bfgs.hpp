#ifndef BOED_OPTIM_BFGS_HPP
#define BOED_OPTIM_BFGS_HPP

#include "boed/optim/trace.hpp"
#include "boed/util/bounds.hpp"

#include <functional>

namespace boed::optim {

struct ValueAndGradient {
  double value = 0.0;
  Eigen::VectorXd gradient;
};

/// Deterministic objective to maximize.
using Objective = std::function<ValueAndGradient(const Eigen::VectorXd& x)>;

struct LineSearchOptions {
  double initial_step = 1.0;
  double contraction = 0.5;
  double armijo = 1e-4;
  double min_step = 1e-12;
};

struct BFGSOptions {
  double grad_tol = 1e-5;
  int max_iters = 100;
  LineSearchOptions line_search{};
  /// Stop when an accepted step moves x by less than this.
  double position_tol = 1e-12;
  /// Stop when an accepted step changes f by less than value_tol * max(1, |f|).
  double value_tol = 1e-14;
  DesignBounds bounds;

  void validate() const;
};

/// Observer for the inverse-Hessian approximation after every accepted step.
using InverseHessianObserver = std::function<void(const Eigen::MatrixXd& h)>;

/// Box-constrained BFGS ascent. Internally minimizes -f with H_0 = I,
/// direction p = -H grad(-f) restricted to the variables not held at a bound,
/// Armijo backtracking along the projected path, and the inverse update
/// skipped whenever s^T u <= 1e-12 |s| |u|. The gradient test uses the
/// gradient with bound-held components removed, which equals grad f in the
/// interior.
OptimizationTrace bfgs_maximize(const Objective& objective, const Eigen::VectorXd& x0,
                                const BFGSOptions& options,
                                const InverseHessianObserver& observer = {});

}  // namespace boed::optim

#endif  // BOED_OPTIM_BFGS_HPP
