#ifndef BOED_OPTIM_TRACE_HPP
#define BOED_OPTIM_TRACE_HPP

#include <Eigen/Dense>

#include <string_view>
#include <vector>

namespace boed::optim {

enum class Termination {
  gradient_stalled,
  step_stalled,
  position_stalled,
  max_iters,
  line_search_failed,
};

std::string_view to_string(Termination termination);
Termination termination_from_string(std::string_view name);

/// History of one optimization run.
struct OptimizationTrace {
  std::vector<Eigen::VectorXd> iterates;  ///< x_0, x_1, ...
  std::vector<double> step_sizes;         ///< a_k (RM) or accepted line-search step (BFGS)
  std::vector<double> values;             ///< objective at each iterate, when known
  Termination termination = Termination::max_iters;
  /// RM: gradient draws. BFGS: outer iterations.
  int iterations = 0;
  long long n_objective_evals = 0;
  long long n_gradient_evals = 0;
  double wall_time = 0.0;  ///< seconds

  const Eigen::VectorXd& final_design() const { return iterates.back(); }
};

}  // namespace boed::optim

#endif  // BOED_OPTIM_TRACE_HPP
