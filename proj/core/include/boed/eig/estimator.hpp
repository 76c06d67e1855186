#ifndef BOED_EIG_ESTIMATOR_HPP
#define BOED_EIG_ESTIMATOR_HPP

#include "boed/eig/noise.hpp"
#include "boed/eig/prior.hpp"
#include "boed/models/forward_model.hpp"
#include "boed/util/bounds.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <memory>
#include <vector>

namespace boed::eig {

/// Frozen randomness of one nested Monte Carlo estimate: N outer parameter
/// draws, N x M inner prior draws and one standard-normal noise vector per
/// outer draw. Independent of the design.
struct EIGSampleSet {
  Eigen::MatrixXd thetas_outer;  ///< N x n_theta
  Eigen::MatrixXd thetas_inner;  ///< (N * M) x n_theta, row i * M + j
  Eigen::MatrixXd z;             ///< N x n_y
  std::uint64_t seed = 0;

  int outer() const { return static_cast<int>(thetas_outer.rows()); }
  int inner() const {
    return outer() == 0 ? 0 : static_cast<int>(thetas_inner.rows() / thetas_outer.rows());
  }
};

struct EIGValueAndGrad {
  double value = 0.0;  ///< nats
  Eigen::VectorXd gradient;
  long long n_model_evals = 0;
};

/// Configuration of the nested Monte Carlo estimator
///   U_{N,M}(d) = 1/N sum_i [ ln f(y_i | theta_i, d)
///                            - ln 1/M sum_j f(y_i | theta_ij, d) ],
///   y_i = G(theta_i, d) + C(theta_i, d) z_i.
class EIGEstimator {
 public:
  EIGEstimator(std::shared_ptr<const models::ForwardModel> model, NoiseModel noise, PriorSpec prior,
               int outer, int inner, DesignBounds design_bounds);

  const models::ForwardModel& model() const { return *model_; }
  std::shared_ptr<const models::ForwardModel> model_ptr() const { return model_; }
  const NoiseModel& noise() const { return noise_; }
  const PriorSpec& prior() const { return prior_; }
  const DesignBounds& design_bounds() const { return bounds_; }
  int outer() const { return outer_; }
  int inner() const { return inner_; }

  /// Threads used across outer samples. Results are reduced in index order,
  /// so the value does not depend on this setting.
  int workers() const { return workers_; }
  EIGEstimator& set_workers(int workers);

  /// Use the reduced likelihood derivative when every beta_c is zero.
  bool constant_noise_shortcut() const { return constant_noise_shortcut_; }
  EIGEstimator& set_constant_noise_shortcut(bool enabled);

  /// Copy with different sample sizes.
  EIGEstimator with_sizes(int outer, int inner) const;

 private:
  std::shared_ptr<const models::ForwardModel> model_;
  NoiseModel noise_;
  PriorSpec prior_;
  int outer_;
  int inner_;
  DesignBounds bounds_;
  int workers_ = 1;
  bool constant_noise_shortcut_ = false;
};

/// Deterministic in `seed`: draws outer thetas, then inner thetas, then z.
EIGSampleSet draw_sample_set(const EIGEstimator& estimator, std::uint64_t seed);

double eig_value(const EIGEstimator& estimator, const Eigen::VectorXd& d,
                 const EIGSampleSet& samples);

/// Per-outer-sample contributions whose mean is eig_value().
std::vector<double> eig_value_terms(const EIGEstimator& estimator, const Eigen::VectorXd& d,
                                    const EIGSampleSet& samples);

/// Value and analytic design gradient. The value field is bitwise equal to
/// eig_value() on the same inputs.
EIGValueAndGrad eig_gradient(const EIGEstimator& estimator, const Eigen::VectorXd& d,
                             const EIGSampleSet& samples);

/// draw_sample_set() followed by eig_value().
double eig_value_fresh(const EIGEstimator& estimator, const Eigen::VectorXd& d, std::uint64_t seed);

namespace detail {

/// d/dd ln f(y | outer theta, d) where y moves with d through G and C.
/// Only the noise scale depends on d once the residual is written as C z.
void outer_log_likelihood_gradient(const Eigen::VectorXd& g_outer, const Eigen::MatrixXd& j_outer,
                                   const NoiseModel& noise, Eigen::Ref<Eigen::VectorXd> out);

/// d/dd ln f(y(d) | inner theta, d) with y(d) = G_o + (alpha + beta |G_o|) z.
/// Full form including the sign(G) terms of the signal-dependent noise.
void inner_log_likelihood_gradient(const Eigen::VectorXd& g_inner, const Eigen::MatrixXd& j_inner,
                                   const Eigen::VectorXd& g_outer, const Eigen::MatrixXd& j_outer,
                                   const Eigen::VectorXd& z, const NoiseModel& noise,
                                   Eigen::Ref<Eigen::VectorXd> out);

/// Same derivative specialised to beta = 0.
void inner_log_likelihood_gradient_constant_noise(const Eigen::VectorXd& g_inner,
                                                  const Eigen::MatrixXd& j_inner,
                                                  const Eigen::VectorXd& g_outer,
                                                  const Eigen::MatrixXd& j_outer,
                                                  const Eigen::VectorXd& z, const NoiseModel& noise,
                                                  Eigen::Ref<Eigen::VectorXd> out);

/// ln( (1/n) sum exp(v_k) ) without overflow.
double log_mean_exp(const Eigen::VectorXd& values);

}  // namespace detail

}  // namespace boed::eig

#endif  // BOED_EIG_ESTIMATOR_HPP
