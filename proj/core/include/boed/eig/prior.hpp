#ifndef BOED_EIG_PRIOR_HPP
#define BOED_EIG_PRIOR_HPP

#include <Eigen/Dense>

#include <random>
#include <vector>

namespace boed::eig {

/// One independent prior marginal: uniform on [a, b] or normal with mean a
/// and standard deviation b.
struct PriorComponent {
  enum class Kind { uniform, normal };

  Kind kind = Kind::uniform;
  double a = 0.0;
  double b = 1.0;

  static PriorComponent uniform(double lower, double upper);
  static PriorComponent normal(double mean, double stddev);
};

/// Product prior over theta. Draws consume one standard uniform (uniform
/// marginals) or one standard normal (normal marginals) per component, in
/// component order.
class PriorSpec {
 public:
  explicit PriorSpec(std::vector<PriorComponent> components);

  static PriorSpec unit_uniform(int dimension);
  static PriorSpec standard_normal(int dimension, double stddev = 1.0);

  int dimension() const { return static_cast<int>(components_.size()); }
  const std::vector<PriorComponent>& components() const { return components_; }
  bool all_uniform() const;

  /// `out` is any writable vector expression of length dimension(), e.g. a matrix row.
  template <typename Engine, typename Out>
  void sample_into(Engine& engine, std::uniform_real_distribution<double>& unit,
                   std::normal_distribution<double>& gauss, Out&& out) const {
    for (int k = 0; k < dimension(); ++k) {
      const auto& c = components_[static_cast<std::size_t>(k)];
      out[k] = c.kind == PriorComponent::Kind::uniform ? c.a + (c.b - c.a) * unit(engine)
                                                       : c.a + c.b * gauss(engine);
    }
  }

 private:
  std::vector<PriorComponent> components_;
};

}  // namespace boed::eig

#endif  // BOED_EIG_PRIOR_HPP
