#ifndef BOED_POLYCHAOS_EXPANSION_HPP
#define BOED_POLYCHAOS_EXPANSION_HPP

#include "boed/polychaos/index_set.hpp"
#include "boed/polychaos/quadrature.hpp"

#include <Eigen/Dense>

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace boed::polychaos {

/// Mapped inputs may leave [-1, 1] by this much before evaluation refuses them.
inline constexpr double kDomainTolerance = 1e-9;

/// physical = gamma + delta * standard, standard in [-1, 1].
struct AffineMap {
  double gamma = 0.0;
  double delta = 1.0;

  AffineMap() = default;
  AffineMap(double gamma_, double delta_);

  /// Map for the interval [lower, upper].
  static AffineMap from_bounds(double lower, double upper);

  double to_physical(double xi) const { return gamma + delta * xi; }
  double to_standard(double x) const { return (x - gamma) / delta; }
};

/// Raised when projection meets a model output it cannot use.
class ProjectionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Multi-output Legendre expansion over the joint (parameter, design) space.
///
/// The first `parameter_dimension` standardized variables belong to theta,
/// the rest to the design d. Coefficients are stored one row per output,
/// one column per multi-index. Outputs flagged in log_space are stored as
/// expansions of ln G_c and exponentiated on evaluation.
class PCExpansion {
 public:
  PCExpansion(IndexSet index_set, Eigen::MatrixXd coefficients, std::vector<AffineMap> maps,
              int parameter_dimension, std::vector<bool> log_space);
  /// Same log_space flag for every output.
  PCExpansion(IndexSet index_set, Eigen::MatrixXd coefficients, std::vector<AffineMap> maps,
              int parameter_dimension, bool log_space);

  const IndexSet& index_set() const { return index_set_; }
  const Eigen::MatrixXd& coefficients() const { return coefficients_; }
  const std::vector<AffineMap>& maps() const { return maps_; }
  const std::vector<bool>& log_space() const { return log_space_; }
  bool log_space(int output) const { return log_space_.at(static_cast<std::size_t>(output)); }

  int dimension() const { return index_set_.dimension(); }
  int parameter_dimension() const { return parameter_dimension_; }
  int design_dimension() const { return dimension() - parameter_dimension_; }
  int outputs() const { return static_cast<int>(coefficients_.rows()); }
  std::size_t terms() const { return index_set_.size(); }

  Eigen::VectorXd evaluate(const Eigen::VectorXd& theta, const Eigen::VectorXd& d) const;

  /// Jacobian of the outputs with respect to the physical design variables,
  /// n_y x n_d.
  Eigen::MatrixXd gradient_wrt_design(const Eigen::VectorXd& theta,
                                      const Eigen::VectorXd& d) const;

  /// evaluate() and gradient_wrt_design() in one pass. `value` is bitwise
  /// identical to what evaluate() returns.
  void evaluate_with_gradient(const Eigen::VectorXd& theta, const Eigen::VectorXd& d,
                              Eigen::VectorXd& value, Eigen::MatrixXd& jacobian) const;

  /// Standardized coordinates of a physical (theta, d) point; throws
  /// std::domain_error beyond kDomainTolerance and clamps otherwise.
  Eigen::VectorXd standardize(const Eigen::VectorXd& theta, const Eigen::VectorXd& d) const;

 private:
  void basis(const Eigen::VectorXd& xi, Eigen::VectorXd& psi, Eigen::MatrixXd* dpsi) const;

  IndexSet index_set_;
  Eigen::MatrixXd coefficients_;
  std::vector<AffineMap> maps_;
  int parameter_dimension_;
  std::vector<bool> log_space_;
};

/// Physical (theta, d) -> model outputs.
using ModelEvaluator =
    std::function<Eigen::VectorXd(const Eigen::VectorXd& theta, const Eigen::VectorXd& d)>;

struct ProjectionOptions {
  /// Project ln f for every output.
  bool log_space = false;
  /// Per-output override of log_space; one entry per output when non-empty.
  std::vector<bool> log_outputs;
  /// Worker threads used to evaluate the model at quadrature nodes. The
  /// evaluator must be reentrant when this exceeds 1.
  int workers = 1;
};

/// Non-intrusive spectral projection: for each output c and multi-index b,
///   g_{c,b} = sum_q w_q f_c(x_q) Psi_b(xi_q) / E[Psi_b^2].
/// `maps` has one entry per standardized dimension, theta dimensions first.
PCExpansion project(const ModelEvaluator& model, const IndexSet& index_set,
                    const QuadratureRule& rule, const std::vector<AffineMap>& maps,
                    int parameter_dimension, const ProjectionOptions& options = {});

/// E[Psi_b^2] = prod_j 1 / (2 b_j + 1).
double basis_norm_squared(const MultiIndex& index);

}  // namespace boed::polychaos

#endif  // BOED_POLYCHAOS_EXPANSION_HPP
