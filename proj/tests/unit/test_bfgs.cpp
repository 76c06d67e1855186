#include "boed/optim/bfgs.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace boed;
using namespace boed::optim;

namespace {

BFGSOptions box(double lo, double hi, int dimension = 2) {
  BFGSOptions o;
  o.bounds = DesignBounds(Eigen::VectorXd::Constant(dimension, lo), Eigen::VectorXd::Constant(dimension, hi));
  return o;
}

Objective concave_quadratic(const Eigen::Matrix2d& a, const Eigen::Vector2d& target) {
  return [=](const Eigen::VectorXd& x) {
    const Eigen::Vector2d r = x - target;
    return ValueAndGradient{-r.dot(a * r), -2.0 * (a * r)};
  };
}

}  // namespace

TEST_CASE("concave quadratic is solved in a few iterations") {
  Eigen::Matrix2d a;
  a << 3.0, 1.0, 1.0, 2.0;
  const Eigen::Vector2d target(0.3, -0.2);
  auto opts = box(-1, 1);
  opts.grad_tol = 1e-10;
  const auto trace = bfgs_maximize(concave_quadratic(a, target), Eigen::Vector2d(-0.8, 0.9), opts);
  MESSAGE("iterations " << trace.iterations);
  CHECK((trace.final_design() - target).norm() <= 1e-8);
  CHECK(trace.iterations <= 10);
}

TEST_CASE("start at the optimum") {
  Eigen::Matrix2d a = Eigen::Matrix2d::Identity();
  const Eigen::Vector2d target(0.1, 0.2);
  const auto trace = bfgs_maximize(concave_quadratic(a, target), target, box(-1, 1));
  CHECK(trace.termination == Termination::gradient_stalled);
  CHECK(trace.iterations == 0);
  CHECK(trace.iterates.size() == 1);
}

TEST_CASE("negated Rosenbrock") {
  const Objective f = [](const Eigen::VectorXd& x) {
    const double a = 1.0 - x[0];
    const double b = x[1] - x[0] * x[0];
    Eigen::Vector2d g(2.0 * a + 400.0 * x[0] * b, -200.0 * b);
    return ValueAndGradient{-(a * a + 100.0 * b * b), g};
  };
  auto opts = box(-2, 2);
  opts.grad_tol = 1e-9;
  opts.max_iters = 500;
  const auto trace = bfgs_maximize(f, Eigen::Vector2d(-1.2, 1.0), opts);
  MESSAGE("iterations " << trace.iterations << " termination " << to_string(trace.termination));
  CHECK((trace.final_design() - Eigen::Vector2d(1.0, 1.0)).norm() <= 1e-6);
}

TEST_CASE("bound-constrained optimum and feasible iterates") {
  Eigen::Matrix2d a;
  a << 2.0, 0.5, 0.5, 1.0;
  // unconstrained maximizer outside the unit box
  const auto trace = bfgs_maximize(concave_quadratic(a, Eigen::Vector2d(1.6, -0.4)), Eigen::Vector2d(0.5, 0.5),
                                   box(0, 1));
  for (const auto& x : trace.iterates) CHECK(DesignBounds::unit_box(2).contains(x));
  // KKT point of the box problem: x0 = 1 held; optimize x1 >= 0
  // d/dx1 of -(r^T A r) at x0 = 1: -2 (0.5 (1 - 1.6) + 1 (x1 + 0.4)) = 0 -> x1 = -0.1 -> clamp 0
  CHECK((trace.final_design() - Eigen::Vector2d(1.0, 0.0)).norm() <= 1e-8);
}

TEST_CASE("inverse Hessian stays positive definite") {
  const Objective f = [](const Eigen::VectorXd& x) {
    const double v = -std::pow(x[0] - 0.3, 4) - std::pow(x[1] + 0.1, 2) - std::sin(2.0 * x[0] * x[1]);
    Eigen::Vector2d g(-4.0 * std::pow(x[0] - 0.3, 3) - 2.0 * x[1] * std::cos(2.0 * x[0] * x[1]),
                      -2.0 * (x[1] + 0.1) - 2.0 * x[0] * std::cos(2.0 * x[0] * x[1]));
    return ValueAndGradient{v, g};
  };
  int updates = 0;
  const auto observer = [&](const Eigen::MatrixXd& h) {
    ++updates;
    CHECK((h - h.transpose()).norm() <= 1e-12 * h.norm());
    Eigen::LLT<Eigen::MatrixXd> llt(h);
    CHECK(llt.info() == Eigen::Success);
  };
  bfgs_maximize(f, Eigen::Vector2d(0.9, 0.8), box(-1, 1), observer);
  CHECK(updates > 0);
}

TEST_CASE("bit-reproducible") {
  Eigen::Matrix2d a;
  a << 1.0, 0.9, 0.9, 1.0;
  const auto f = concave_quadratic(a, Eigen::Vector2d(0.2, 0.4));
  const auto t1 = bfgs_maximize(f, Eigen::Vector2d(-0.7, 0.95), box(-1, 1));
  const auto t2 = bfgs_maximize(f, Eigen::Vector2d(-0.7, 0.95), box(-1, 1));
  REQUIRE(t1.iterates.size() == t2.iterates.size());
  for (std::size_t k = 0; k < t1.iterates.size(); ++k) CHECK(t1.iterates[k] == t2.iterates[k]);
  CHECK(t1.step_sizes == t2.step_sizes);
  CHECK(t1.n_objective_evals == t2.n_objective_evals);
}

TEST_CASE("bfgs errors") {
  const Objective bad = [](const Eigen::VectorXd& x) {
    return ValueAndGradient{std::numeric_limits<double>::quiet_NaN(), Eigen::VectorXd::Zero(x.size())};
  };
  CHECK_THROWS(bfgs_maximize(bad, Eigen::Vector2d(0.0, 0.0), box(-1, 1)));
  const auto f = concave_quadratic(Eigen::Matrix2d::Identity(), Eigen::Vector2d::Zero());
  CHECK_THROWS(bfgs_maximize(f, Eigen::Vector2d(2.0, 0.0), box(-1, 1)));
  auto opts = box(-1, 1);
  opts.line_search.contraction = 1.0;
  CHECK_THROWS(opts.validate());
  opts = box(-1, 1);
  opts.line_search.armijo = 0.0;
  CHECK_THROWS(opts.validate());
}
