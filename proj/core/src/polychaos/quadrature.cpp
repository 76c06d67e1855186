#include "boed/polychaos/quadrature.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace boed::polychaos {

namespace {

constexpr int kMaxLevel = 30;

void check_level(int level) {
  if (level < 0 || level > kMaxLevel) {
    throw std::invalid_argument("quadrature: level out of range: " + std::to_string(level));
  }
}

// Position of node k among the n + 1 Clenshaw-Curtis points, ascending.
// sin(pi (2k - n) / (2n)) == -cos(pi k / n), written so the midpoint is
// exactly zero and a node has identical bits at every nesting level.
double cc_node(std::int64_t k, std::int64_t n) {
  if (n == 0) return 0.0;
  return std::sin(std::numbers::pi * static_cast<double>(2 * k - n) / static_cast<double>(2 * n));
}

// Weights on [-1, 1] for n >= 2 intervals, normalized to sum to 1.
std::vector<double> cc_weights(std::int64_t n) {
  std::vector<double> w(static_cast<std::size_t>(n + 1));
  for (std::int64_t k = 0; k <= n; ++k) {
    const double angle = std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    double sum = 0.0;
    for (std::int64_t j = 1; j <= n / 2; ++j) {
      const double b = (2 * j == n) ? 1.0 : 2.0;
      sum += b / (4.0 * static_cast<double>(j * j) - 1.0) * std::cos(2.0 * static_cast<double>(j) * angle);
    }
    const double c = (k == 0 || k == n) ? 1.0 : 2.0;
    w[static_cast<std::size_t>(k)] = 0.5 * c / static_cast<double>(n) * (1.0 - sum);
  }
  return w;
}

std::size_t checked_product(std::span<const int> levels, std::size_t max_points) {
  std::size_t total = 1;
  for (int level : levels) {
    check_level(level);
    const std::size_t n = clenshaw_curtis_size(level);
    if (total > max_points / n) {
      throw std::length_error("tensor_quadrature: rule exceeds point budget of " +
                              std::to_string(max_points));
    }
    total *= n;
  }
  if (total > max_points) {
    throw std::length_error("tensor_quadrature: rule exceeds point budget of " +
                            std::to_string(max_points));
  }
  return total;
}

double binomial(int n, int k) {
  double result = 1.0;
  for (int i = 1; i <= k; ++i) result = result * (n - k + i) / i;
  return result;
}

// Visits every level vector with entries >= 0 summing to exactly `total`.
template <typename Visit>
void for_each_level_vector(int dimension, int total, std::vector<int>& current, int pos,
                           Visit&& visit) {
  if (pos + 1 == dimension) {
    current[static_cast<std::size_t>(pos)] = total;
    visit(current);
    return;
  }
  for (int head = total; head >= 0; --head) {
    current[static_cast<std::size_t>(pos)] = head;
    for_each_level_vector(dimension, total - head, current, pos + 1, visit);
  }
}

}  // namespace

double QuadratureRule::integrate(const std::function<double(const Eigen::VectorXd&)>& f) const {
  double sum = 0.0;
  Eigen::VectorXd x(nodes.cols());
  for (Eigen::Index q = 0; q < nodes.rows(); ++q) {
    x = nodes.row(q).transpose();
    sum += weights[q] * f(x);
  }
  return sum;
}

std::size_t clenshaw_curtis_size(int level) {
  check_level(level);
  return level == 0 ? 1 : (std::size_t{1} << level) + 1;
}

QuadratureRule clenshaw_curtis_1d(int level) {
  check_level(level);
  QuadratureRule rule;
  if (level == 0) {
    rule.nodes = Eigen::MatrixXd::Zero(1, 1);
    rule.weights = Eigen::VectorXd::Ones(1);
    return rule;
  }
  const std::int64_t n = std::int64_t{1} << level;
  const auto w = cc_weights(n);
  rule.nodes.resize(n + 1, 1);
  rule.weights.resize(n + 1);
  for (std::int64_t k = 0; k <= n; ++k) {
    rule.nodes(k, 0) = cc_node(k, n);
    rule.weights[k] = w[static_cast<std::size_t>(k)];
  }
  return rule;
}

QuadratureRule tensor_quadrature(std::span<const int> levels, std::size_t max_points) {
  if (levels.empty()) throw std::invalid_argument("tensor_quadrature: no dimensions");
  const std::size_t total = checked_product(levels, max_points);
  const auto dim = levels.size();

  std::vector<QuadratureRule> rules;
  rules.reserve(dim);
  for (int level : levels) rules.push_back(clenshaw_curtis_1d(level));

  QuadratureRule rule;
  rule.nodes.resize(static_cast<Eigen::Index>(total), static_cast<Eigen::Index>(dim));
  rule.weights.resize(static_cast<Eigen::Index>(total));
  std::vector<std::size_t> counter(dim, 0);
  for (std::size_t q = 0; q < total; ++q) {
    double w = 1.0;
    for (std::size_t j = 0; j < dim; ++j) {
      const auto k = static_cast<Eigen::Index>(counter[j]);
      rule.nodes(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(j)) = rules[j].nodes(k, 0);
      w *= rules[j].weights[k];
    }
    rule.weights[static_cast<Eigen::Index>(q)] = w;
    // Odometer increment, last dimension fastest.
    for (std::size_t j = dim; j-- > 0;) {
      if (++counter[j] < rules[j].size()) break;
      counter[j] = 0;
    }
  }
  return rule;
}

QuadratureRule smolyak_quadrature(int dimension, int level, std::size_t max_points) {
  if (dimension < 1) throw std::invalid_argument("smolyak_quadrature: dimension must be >= 1");
  check_level(level);

  const int finest = std::max(level, 1);
  const std::int64_t fine_n = std::int64_t{1} << finest;
  const auto dim = static_cast<std::size_t>(dimension);

  // Exact position of each node on the finest grid -> accumulated weight.
  std::map<std::vector<std::int64_t>, double> merged;
  std::vector<std::vector<double>> weight_cache(static_cast<std::size_t>(finest) + 1);
  for (int l = 0; l <= finest; ++l) {
    auto& w = weight_cache[static_cast<std::size_t>(l)];
    if (l == 0) {
      w = {1.0};
    } else {
      w = cc_weights(std::int64_t{1} << l);
    }
  }

  std::vector<int> levels(dim, 0);
  const int lowest = std::max(level - dimension + 1, 0);
  for (int total = lowest; total <= level; ++total) {
    const int gap = level - total;
    const double coefficient = ((gap % 2) ? -1.0 : 1.0) * binomial(dimension - 1, gap);
    for_each_level_vector(dimension, total, levels, 0, [&](const std::vector<int>& ls) {
      const std::size_t count = checked_product(ls, max_points);
      std::vector<std::size_t> counter(dim, 0);
      std::vector<std::int64_t> key(dim);
      for (std::size_t q = 0; q < count; ++q) {
        double w = coefficient;
        for (std::size_t j = 0; j < dim; ++j) {
          const int l = ls[j];
          const auto k = static_cast<std::int64_t>(counter[j]);
          key[j] = (l == 0) ? fine_n / 2 : k << (finest - l);
          w *= weight_cache[static_cast<std::size_t>(l)][counter[j]];
        }
        merged[key] += w;
        for (std::size_t j = dim; j-- > 0;) {
          if (++counter[j] < clenshaw_curtis_size(ls[j])) break;
          counter[j] = 0;
        }
      }
      if (merged.size() > max_points) {
        throw std::length_error("smolyak_quadrature: rule exceeds point budget of " +
                                std::to_string(max_points));
      }
    });
  }

  QuadratureRule rule;
  rule.nodes.resize(static_cast<Eigen::Index>(merged.size()), static_cast<Eigen::Index>(dim));
  rule.weights.resize(static_cast<Eigen::Index>(merged.size()));
  Eigen::Index q = 0;
  for (const auto& [key, w] : merged) {
    for (std::size_t j = 0; j < dim; ++j) {
      rule.nodes(q, static_cast<Eigen::Index>(j)) = cc_node(key[j], fine_n);
    }
    rule.weights[q] = w;
    ++q;
  }
  return rule;
}

}  // namespace boed::polychaos
