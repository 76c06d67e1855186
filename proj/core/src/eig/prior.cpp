#include "boed/eig/prior.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace boed::eig {

PriorComponent PriorComponent::uniform(double lower, double upper) {
  if (!std::isfinite(lower) || !std::isfinite(upper) || !(lower < upper)) {
    throw std::invalid_argument("uniform prior needs finite bounds with lower < upper");
  }
  return {Kind::uniform, lower, upper};
}

PriorComponent PriorComponent::normal(double mean, double stddev) {
  if (!std::isfinite(mean) || !(stddev > 0.0) || !std::isfinite(stddev)) {
    throw std::invalid_argument("normal prior needs finite mean and stddev > 0");
  }
  return {Kind::normal, mean, stddev};
}

PriorSpec::PriorSpec(std::vector<PriorComponent> components) : components_(std::move(components)) {
  if (components_.empty()) throw std::invalid_argument("PriorSpec: no components");
  for (const auto& c : components_) {
    // Route through the factories to re-validate.
    if (c.kind == PriorComponent::Kind::uniform) {
      PriorComponent::uniform(c.a, c.b);
    } else {
      PriorComponent::normal(c.a, c.b);
    }
  }
}

PriorSpec PriorSpec::unit_uniform(int dimension) {
  return PriorSpec(std::vector<PriorComponent>(static_cast<std::size_t>(dimension),
                                               PriorComponent::uniform(0.0, 1.0)));
}

PriorSpec PriorSpec::standard_normal(int dimension, double stddev) {
  return PriorSpec(std::vector<PriorComponent>(static_cast<std::size_t>(dimension),
                                               PriorComponent::normal(0.0, stddev)));
}

bool PriorSpec::all_uniform() const {
  return std::all_of(components_.begin(), components_.end(),
                     [](const auto& c) { return c.kind == PriorComponent::Kind::uniform; });
}

}  // namespace boed::eig
