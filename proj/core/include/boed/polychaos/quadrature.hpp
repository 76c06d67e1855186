#ifndef BOED_POLYCHAOS_QUADRATURE_HPP
#define BOED_POLYCHAOS_QUADRATURE_HPP

#include <Eigen/Dense>

#include <cstddef>
#include <functional>
#include <span>

namespace boed::polychaos {

inline constexpr std::size_t kDefaultPointBudget = 10'000'000;

/// Nodes in [-1, 1]^n (one per row) and weights normalized to the uniform
/// density, so sum(weights) == 1.
struct QuadratureRule {
  Eigen::MatrixXd nodes;
  Eigen::VectorXd weights;

  int dimension() const { return static_cast<int>(nodes.cols()); }
  std::size_t size() const { return static_cast<std::size_t>(nodes.rows()); }

  /// sum_q w_q f(node_q)
  double integrate(const std::function<double(const Eigen::VectorXd&)>& f) const;
};

/// Nested Clenshaw-Curtis rule: one point at level 0, 2^level + 1 points
/// otherwise. Nodes ascend from -1 to 1.
QuadratureRule clenshaw_curtis_1d(int level);

/// Number of points of the level-`level` Clenshaw-Curtis rule.
std::size_t clenshaw_curtis_size(int level);

/// Full tensor product of 1-D Clenshaw-Curtis rules, first dimension slowest.
QuadratureRule tensor_quadrature(std::span<const int> levels,
                                 std::size_t max_points = kDefaultPointBudget);

/// Isotropic Smolyak combination of nested Clenshaw-Curtis rules. Coinciding
/// nodes are merged by their exact position on the finest nested grid.
QuadratureRule smolyak_quadrature(int dimension, int level,
                                  std::size_t max_points = kDefaultPointBudget);

}  // namespace boed::polychaos

#endif  // BOED_POLYCHAOS_QUADRATURE_HPP
