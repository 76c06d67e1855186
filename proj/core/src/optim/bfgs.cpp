#include "boed/optim/bfgs.hpp"

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace boed::optim {

void BFGSOptions::validate() const {
  if (!(grad_tol > 0.0)) throw std::invalid_argument("BFGSOptions: grad_tol must be > 0");
  if (max_iters < 1) throw std::invalid_argument("BFGSOptions: max_iters must be >= 1");
  const auto& ls = line_search;
  if (!(ls.contraction > 0.0 && ls.contraction < 1.0)) {
    throw std::invalid_argument("BFGSOptions: contraction factor must lie in (0, 1)");
  }
  if (!(ls.armijo > 0.0 && ls.armijo < 1.0)) {
    throw std::invalid_argument("BFGSOptions: Armijo constant must lie in (0, 1)");
  }
  if (!(ls.initial_step > 0.0) || !(ls.min_step > 0.0)) {
    throw std::invalid_argument("BFGSOptions: line-search steps must be > 0");
  }
  if (bounds.dimension() == 0) throw std::invalid_argument("BFGSOptions: bounds not set");
}

namespace {

struct Point {
  Eigen::VectorXd x;
  double phi;             // -f
  Eigen::VectorXd grad;   // grad(-f)
};

Point evaluate(const Objective& objective, const Eigen::VectorXd& x, OptimizationTrace& trace) {
  auto r = objective(x);
  ++trace.n_objective_evals;
  ++trace.n_gradient_evals;
  if (!std::isfinite(r.value) || r.gradient.size() != x.size() || !r.gradient.allFinite()) {
    throw std::runtime_error(fmt::format("bfgs_maximize: non-finite objective or gradient at [{}]",
                                         fmt::join(x.data(), x.data() + x.size(), ", ")));
  }
  return {x, -r.value, -r.gradient};
}

// Variables pinned at a bound with the descent direction pointing outward.
std::vector<bool> active_set(const Point& p, const DesignBounds& bounds) {
  std::vector<bool> active(static_cast<std::size_t>(p.x.size()), false);
  for (Eigen::Index i = 0; i < p.x.size(); ++i) {
    active[static_cast<std::size_t>(i)] = (p.x[i] <= bounds.lower[i] && p.grad[i] > 0.0) ||
                                          (p.x[i] >= bounds.upper[i] && p.grad[i] < 0.0);
  }
  return active;
}

}  // namespace

OptimizationTrace bfgs_maximize(const Objective& objective, const Eigen::VectorXd& x0,
                                const BFGSOptions& options, const InverseHessianObserver& observer) {
  options.validate();
  if (!options.bounds.contains(x0)) throw std::domain_error("bfgs_maximize: x0 outside bounds");
  const auto start = std::chrono::steady_clock::now();
  const auto n = x0.size();
  const auto& ls = options.line_search;

  OptimizationTrace trace;
  Point current = evaluate(objective, x0, trace);
  trace.iterates.push_back(current.x);
  trace.values.push_back(-current.phi);
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n);

  for (int k = 0;; ++k) {
    const auto active = active_set(current, options.bounds);
    Eigen::VectorXd reduced = current.grad;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (active[static_cast<std::size_t>(i)]) reduced[i] = 0.0;
    }
    if (reduced.norm() < options.grad_tol) {
      trace.termination = Termination::gradient_stalled;
      break;
    }
    if (k >= options.max_iters) {
      trace.termination = Termination::max_iters;
      break;
    }

    // Quasi-Newton direction on the free variables only.
    Eigen::MatrixXd h_free = h;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (!active[static_cast<std::size_t>(i)]) continue;
      h_free.row(i).setZero();
      h_free.col(i).setZero();
    }
    Eigen::VectorXd direction = -h_free * reduced;
    if (!(current.grad.dot(direction) < 0.0)) {
      h.setIdentity();
      direction = -reduced;
    }

    double step = ls.initial_step;
    bool accepted = false;
    bool immobile = false;
    Point trial;
    while (step >= ls.min_step) {
      const Eigen::VectorXd x_trial = options.bounds.project(current.x + step * direction);
      const Eigen::VectorXd s = x_trial - current.x;
      if (s.norm() <= options.position_tol) {
        immobile = true;
        break;
      }
      trial = evaluate(objective, x_trial, trace);
      if (trial.phi <= current.phi + ls.armijo * current.grad.dot(s)) {
        accepted = true;
        break;
      }
      step *= ls.contraction;
    }
    if (immobile) {
      trace.termination = Termination::position_stalled;
      break;
    }
    if (!accepted) {
      trace.termination = Termination::line_search_failed;
      break;
    }

    const Eigen::VectorXd s = trial.x - current.x;
    const Eigen::VectorXd u = trial.grad - current.grad;
    const double su = s.dot(u);
    if (su > 1e-12 * s.norm() * u.norm()) {
      const double rho = 1.0 / su;
      const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(n, n);
      h = (identity - rho * s * u.transpose()) * h * (identity - rho * u * s.transpose()) +
          rho * s * s.transpose();
      h = 0.5 * (h + h.transpose());
    }
    if (observer) observer(h);

    const double previous_phi = current.phi;
    current = std::move(trial);
    trace.iterates.push_back(current.x);
    trace.values.push_back(-current.phi);
    trace.step_sizes.push_back(step);
    trace.iterations = k + 1;

    if (s.norm() < options.position_tol) {
      trace.termination = Termination::position_stalled;
      break;
    }
    if (std::abs(previous_phi - current.phi) < options.value_tol * std::max(1.0, std::abs(current.phi))) {
      trace.termination = Termination::step_stalled;
      break;
    }
  }
  trace.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return trace;
}

}  // namespace boed::optim
