#include "boed/optim/robbins_monro.hpp"

#include <fmt/format.h>

#include <chrono>
#include <stdexcept>

namespace boed::optim {

std::string_view to_string(Termination termination) {
  switch (termination) {
    case Termination::gradient_stalled: return "gradient_stalled";
    case Termination::step_stalled: return "step_stalled";
    case Termination::position_stalled: return "position_stalled";
    case Termination::max_iters: return "max_iters";
    case Termination::line_search_failed: return "line_search_failed";
  }
  return "unknown";
}

Termination termination_from_string(std::string_view name) {
  for (auto t : {Termination::gradient_stalled, Termination::step_stalled,
                 Termination::position_stalled, Termination::max_iters,
                 Termination::line_search_failed}) {
    if (to_string(t) == name) return t;
  }
  throw std::invalid_argument(fmt::format("unknown termination reason '{}'", name));
}

void RMOptions::validate() const {
  if (!(gain.beta > 0.0)) throw std::invalid_argument("RMOptions: gain beta must be > 0");
  if (max_iters < 1) throw std::invalid_argument("RMOptions: max_iters must be >= 1");
  if (stall_patience < 1) throw std::invalid_argument("RMOptions: stall_patience must be >= 1");
  if (!(stall_tol > 0.0)) throw std::invalid_argument("RMOptions: stall_tol must be > 0");
  if (bounds.dimension() == 0) throw std::invalid_argument("RMOptions: bounds not set");
}

OptimizationTrace robbins_monro(const StochasticGradient& gradient, const Eigen::VectorXd& x0,
                                const RMOptions& options) {
  options.validate();
  if (!options.bounds.contains(x0)) throw std::domain_error("robbins_monro: x0 outside bounds");
  const auto start = std::chrono::steady_clock::now();

  OptimizationTrace trace;
  trace.iterates.push_back(x0);
  Eigen::VectorXd x = x0;
  int stalled = 0;
  trace.termination = Termination::max_iters;
  for (int k = 1; k <= options.max_iters; ++k) {
    const Eigen::VectorXd g = gradient(x, k);
    ++trace.n_gradient_evals;
    trace.iterations = k;
    if (g.size() != x.size() || !g.allFinite()) {
      throw std::runtime_error(fmt::format(
          "robbins_monro: non-finite gradient at iteration {} (x = [{}])", k,
          fmt::join(x.data(), x.data() + x.size(), ", ")));
    }
    const double gain = options.gain(k);
    Eigen::VectorXd next = options.bounds.project(x + gain * g);
    const double moved = (next - x).norm();
    x = std::move(next);
    trace.iterates.push_back(x);
    trace.step_sizes.push_back(gain);
    stalled = moved < options.stall_tol ? stalled + 1 : 0;
    if (stalled >= options.stall_patience) {
      trace.termination = Termination::position_stalled;
      break;
    }
  }
  trace.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return trace;
}

}  // namespace boed::optim
