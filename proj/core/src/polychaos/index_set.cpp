#include "boed/polychaos/index_set.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace boed::polychaos {

namespace {

// Appends all compositions of `remaining` into the tail starting at `pos`,
// leading entries descending.
void append_compositions(int remaining, std::size_t pos, MultiIndex& current,
                         std::vector<MultiIndex>& out) {
  if (pos + 1 == current.size()) {
    current[pos] = remaining;
    out.push_back(current);
    return;
  }
  for (int head = remaining; head >= 0; --head) {
    current[pos] = head;
    append_compositions(remaining - head, pos + 1, current, out);
  }
  current[pos] = 0;
}

}  // namespace

int total_order(const MultiIndex& index) {
  return std::accumulate(index.begin(), index.end(), 0);
}

IndexSet::IndexSet(int dimension, int degree, std::vector<MultiIndex> indices)
    : dimension_(dimension), degree_(degree), indices_(std::move(indices)) {
  if (dimension_ < 1) throw std::invalid_argument("IndexSet: dimension must be >= 1");
  if (degree_ < 0) throw std::invalid_argument("IndexSet: degree must be >= 0");
  std::set<MultiIndex> seen;
  for (const auto& b : indices_) {
    if (static_cast<int>(b.size()) != dimension_) {
      throw std::invalid_argument("IndexSet: multi-index has wrong dimension");
    }
    if (std::any_of(b.begin(), b.end(), [&](int e) { return e < 0 || e > degree_; })) {
      throw std::invalid_argument("IndexSet: multi-index entry outside [0, degree]");
    }
    if (!seen.insert(b).second) throw std::invalid_argument("IndexSet: duplicate multi-index");
  }
}

IndexSet IndexSet::total_order(int dimension, int degree) {
  if (dimension < 1) throw std::invalid_argument("total_order_index_set: n_s must be >= 1");
  if (degree < 0) throw std::invalid_argument("total_order_index_set: p must be >= 0");
  std::vector<MultiIndex> indices;
  indices.reserve(total_order_cardinality(dimension, degree));
  MultiIndex current(static_cast<std::size_t>(dimension), 0);
  for (int order = 0; order <= degree; ++order) {
    append_compositions(order, 0, current, indices);
  }
  return IndexSet(dimension, degree, std::move(indices));
}

std::size_t total_order_cardinality(int dimension, int degree) {
  // binomial(p + n, n) accumulated so every partial product is an integer.
  std::size_t result = 1;
  for (int k = 1; k <= dimension; ++k) {
    result = result * static_cast<std::size_t>(degree + k) / static_cast<std::size_t>(k);
  }
  return result;
}

}  // namespace boed::polychaos
