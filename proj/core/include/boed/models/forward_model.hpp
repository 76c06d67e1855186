#ifndef BOED_MODELS_FORWARD_MODEL_HPP
#define BOED_MODELS_FORWARD_MODEL_HPP

#include <Eigen/Dense>

#include <stdexcept>

namespace boed::models {

/// G(theta, d): maps parameters and design variables to n_y mean observables.
///
/// Implementations are pure and reentrant: repeated calls with identical
/// arguments return bitwise-identical results, from any thread.
class ForwardModel {
 public:
  virtual ~ForwardModel() = default;

  virtual int parameter_dimension() const = 0;
  virtual int design_dimension() const = 0;
  virtual int output_dimension() const = 0;

  virtual Eigen::VectorXd value(const Eigen::VectorXd& theta, const Eigen::VectorXd& d) const = 0;

  virtual bool has_design_gradient() const { return false; }

  /// Fills value and the n_y x n_d Jacobian with respect to d. `value` must
  /// be bitwise identical to value(theta, d).
  virtual void value_and_design_gradient(const Eigen::VectorXd& theta, const Eigen::VectorXd& d,
                                         Eigen::VectorXd& value, Eigen::MatrixXd& jacobian) const {
    (void)theta;
    (void)d;
    (void)value;
    (void)jacobian;
    throw std::logic_error("forward model does not provide design gradients");
  }
};

}  // namespace boed::models

#endif  // BOED_MODELS_FORWARD_MODEL_HPP
