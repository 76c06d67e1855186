#ifndef BOED_MODELS_SURROGATE_MODEL_HPP
#define BOED_MODELS_SURROGATE_MODEL_HPP

#include "boed/models/diffusion.hpp"
#include "boed/models/forward_model.hpp"
#include "boed/polychaos/expansion.hpp"

#include <cstdint>

namespace boed::models {

/// Forward model backed by a polynomial chaos expansion; supplies analytic
/// design gradients.
class SurrogateModel final : public ForwardModel {
 public:
  explicit SurrogateModel(polychaos::PCExpansion expansion);

  int parameter_dimension() const override { return expansion_.parameter_dimension(); }
  int design_dimension() const override { return expansion_.design_dimension(); }
  int output_dimension() const override { return expansion_.outputs(); }

  Eigen::VectorXd value(const Eigen::VectorXd& theta, const Eigen::VectorXd& d) const override {
    return expansion_.evaluate(theta, d);
  }
  bool has_design_gradient() const override { return true; }
  void value_and_design_gradient(const Eigen::VectorXd& theta, const Eigen::VectorXd& d,
                                 Eigen::VectorXd& value, Eigen::MatrixXd& jacobian) const override {
    expansion_.evaluate_with_gradient(theta, d, value, jacobian);
  }

  const polychaos::PCExpansion& expansion() const { return expansion_; }

 private:
  polychaos::PCExpansion expansion_;
};

enum class QuadratureKind { tensor, smolyak };

/// How to build the joint (source, sensor) surrogate of the diffusion model.
struct SurrogateBuildOptions {
  int degree = 4;
  QuadratureKind quadrature = QuadratureKind::tensor;
  /// Clenshaw-Curtis level per dimension (tensor) or Smolyak level.
  int level = 3;
  bool log_space = false;
  int workers = 1;
};

/// Projects the diffusion model over [0,1]^2 x [0,1]^2 onto a total-order
/// Legendre basis.
polychaos::PCExpansion build_diffusion_surrogate(const DiffusionForwardModel& model,
                                                 const SurrogateBuildOptions& options = {});

/// Relative L2 error of a surrogate against direct model evaluations at
/// `samples` points drawn uniformly over (theta, d) in [0,1]^n_theta x [0,1]^n_d:
///   sqrt( sum |G_s - G|^2 / sum |G|^2 ),
/// per output component and over all outputs together.
struct SurrogateError {
  Eigen::VectorXd per_output;
  double aggregate = 0.0;
  double max_abs = 0.0;
  int samples = 0;
};

SurrogateError surrogate_error(const ForwardModel& surrogate, const ForwardModel& reference, int samples,
                               std::uint64_t seed, int workers = 1);

}  // namespace boed::models

#endif  // BOED_MODELS_SURROGATE_MODEL_HPP
