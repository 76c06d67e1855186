#ifndef BOED_POLYCHAOS_INDEX_SET_HPP
#define BOED_POLYCHAOS_INDEX_SET_HPP

#include <cstddef>
#include <vector>

namespace boed::polychaos {

/// Per-dimension polynomial degrees of one multivariate basis term.
using MultiIndex = std::vector<int>;

int total_order(const MultiIndex& index);

/// An ordered, duplicate-free list of multi-indices of a common dimension.
///
/// Total-order sets are stored in graded lexicographic order: by |b|_1 first,
/// then with larger leading entries first, e.g. (0,0), (1,0), (0,1), (2,0), ...
class IndexSet {
 public:
  IndexSet(int dimension, int degree, std::vector<MultiIndex> indices);

  /// Every multi-index of dimension n_s with |b|_1 <= p.
  static IndexSet total_order(int dimension, int degree);

  int dimension() const { return dimension_; }
  /// Largest per-dimension degree appearing in the set.
  int degree() const { return degree_; }
  std::size_t size() const { return indices_.size(); }
  const MultiIndex& operator[](std::size_t k) const { return indices_[k]; }
  const std::vector<MultiIndex>& indices() const { return indices_; }

  auto begin() const { return indices_.begin(); }
  auto end() const { return indices_.end(); }

 private:
  int dimension_;
  int degree_;
  std::vector<MultiIndex> indices_;
};

/// Number of total-order terms, binomial(p + n_s, n_s).
std::size_t total_order_cardinality(int dimension, int degree);

}  // namespace boed::polychaos

#endif  // BOED_POLYCHAOS_INDEX_SET_HPP
