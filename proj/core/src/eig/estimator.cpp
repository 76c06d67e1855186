#include "boed/eig/estimator.hpp"

#include "boed/util/parallel.hpp"
#include "boed/util/rng.hpp"
#include "detail.hpp"

#include <fmt/format.h>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace boed::eig {

EIGEstimator::EIGEstimator(std::shared_ptr<const models::ForwardModel> model, NoiseModel noise,
                           PriorSpec prior, int outer, int inner, DesignBounds design_bounds)
    : model_(std::move(model)),
      noise_(std::move(noise)),
      prior_(std::move(prior)),
      outer_(outer),
      inner_(inner),
      bounds_(std::move(design_bounds)) {
  if (!model_) throw std::invalid_argument("EIGEstimator: no forward model");
  if (outer_ < 1 || inner_ < 1) throw std::invalid_argument("EIGEstimator: need N >= 1 and M >= 1");
  if (noise_.outputs() != model_->output_dimension()) {
    throw std::invalid_argument("EIGEstimator: noise model size differs from model outputs");
  }
  if (prior_.dimension() != model_->parameter_dimension()) {
    throw std::invalid_argument("EIGEstimator: prior dimension differs from model parameters");
  }
  if (bounds_.dimension() != model_->design_dimension()) {
    throw std::invalid_argument("EIGEstimator: design bounds dimension differs from model design");
  }
}

EIGEstimator& EIGEstimator::set_workers(int workers) {
  workers_ = util::resolve_workers(workers);
  return *this;
}

EIGEstimator& EIGEstimator::set_constant_noise_shortcut(bool enabled) {
  constant_noise_shortcut_ = enabled;
  return *this;
}

EIGEstimator EIGEstimator::with_sizes(int outer, int inner) const {
  EIGEstimator copy(model_, noise_, prior_, outer, inner, bounds_);
  copy.workers_ = workers_;
  copy.constant_noise_shortcut_ = constant_noise_shortcut_;
  return copy;
}

EIGSampleSet draw_sample_set(const EIGEstimator& estimator, std::uint64_t seed) {
  const int n = estimator.outer();
  const int m = estimator.inner();
  const int n_theta = estimator.prior().dimension();
  const int n_y = estimator.noise().outputs();

  auto engine = util::make_engine(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  EIGSampleSet samples;
  samples.seed = seed;
  samples.thetas_outer.resize(n, n_theta);
  samples.thetas_inner.resize(static_cast<Eigen::Index>(n) * m, n_theta);
  samples.z.resize(n, n_y);
  for (Eigen::Index i = 0; i < samples.thetas_outer.rows(); ++i) {
    estimator.prior().sample_into(engine, unit, gauss, samples.thetas_outer.row(i));
  }
  for (Eigen::Index k = 0; k < samples.thetas_inner.rows(); ++k) {
    estimator.prior().sample_into(engine, unit, gauss, samples.thetas_inner.row(k));
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index c = 0; c < n_y; ++c) samples.z(i, c) = gauss(engine);
  }
  return samples;
}

namespace detail {

double log_mean_exp(const Eigen::VectorXd& values) {
  const double peak = values.maxCoeff();
  if (!std::isfinite(peak)) return peak;
  return peak + std::log((values.array() - peak).exp().mean());
}

void outer_log_likelihood_gradient(const Eigen::VectorXd& g_outer, const Eigen::MatrixXd& j_outer,
                                   const NoiseModel& noise, Eigen::Ref<Eigen::VectorXd> out) {
  out.setZero();
  const auto& alpha = noise.alpha();
  const auto& beta = noise.beta();
  for (Eigen::Index c = 0; c < g_outer.size(); ++c) {
    if (beta[c] == 0.0) continue;
    const double sigma = alpha[c] + beta[c] * std::abs(g_outer[c]);
    const double factor = -beta[c] * sign(g_outer[c]) / sigma;
    for (Eigen::Index a = 0; a < out.size(); ++a) out[a] += factor * j_outer(c, a);
  }
}

void inner_log_likelihood_gradient(const Eigen::VectorXd& g_inner, const Eigen::MatrixXd& j_inner,
                                   const Eigen::VectorXd& g_outer, const Eigen::MatrixXd& j_outer,
                                   const Eigen::VectorXd& z, const NoiseModel& noise,
                                   Eigen::Ref<Eigen::VectorXd> out) {
  out.setZero();
  const auto& alpha = noise.alpha();
  const auto& beta = noise.beta();
  for (Eigen::Index c = 0; c < g_inner.size(); ++c) {
    const double sigma_outer = alpha[c] + beta[c] * std::abs(g_outer[c]);
    const double y = g_outer[c] + sigma_outer * z[c];
    const double sigma = alpha[c] + beta[c] * std::abs(g_inner[c]);
    const double residual = g_inner[c] - y;
    const double s_inner = sign(g_inner[c]);
    const double s_outer = sign(g_outer[c]);
    for (Eigen::Index a = 0; a < out.size(); ++a) {
      const double dg_inner = j_inner(c, a);
      const double dy = j_outer(c, a) * (1.0 + beta[c] * s_outer * z[c]);
      // Normalisation, residual and scale-in-exponent parts of d f_c / f_c.
      out[a] += -beta[c] * s_inner * dg_inner / sigma -
                residual / (sigma * sigma) * (dg_inner - dy) +
                residual * residual * beta[c] * s_inner * dg_inner / (sigma * sigma * sigma);
    }
  }
}

void inner_log_likelihood_gradient_constant_noise(const Eigen::VectorXd& g_inner,
                                                  const Eigen::MatrixXd& j_inner,
                                                  const Eigen::VectorXd& g_outer,
                                                  const Eigen::MatrixXd& j_outer,
                                                  const Eigen::VectorXd& z, const NoiseModel& noise,
                                                  Eigen::Ref<Eigen::VectorXd> out) {
  out.setZero();
  const auto& alpha = noise.alpha();
  for (Eigen::Index c = 0; c < g_inner.size(); ++c) {
    const double residual = g_inner[c] - (g_outer[c] + alpha[c] * z[c]);
    const double scale = residual / (alpha[c] * alpha[c]);
    for (Eigen::Index a = 0; a < out.size(); ++a) out[a] -= scale * (j_inner(c, a) - j_outer(c, a));
  }
}

}  // namespace detail

namespace {

void check_inputs(const EIGEstimator& estimator, const Eigen::VectorXd& d,
                  const EIGSampleSet& samples) {
  if (!estimator.design_bounds().contains(d, 1e-12)) {
    throw std::domain_error(fmt::format("EIG: design [{}] outside the design bounds",
                                        fmt::join(d.data(), d.data() + d.size(), ", ")));
  }
  if (samples.outer() != estimator.outer() || samples.inner() != estimator.inner() ||
      samples.thetas_outer.cols() != estimator.prior().dimension() ||
      samples.z.cols() != estimator.noise().outputs() ||
      samples.thetas_inner.rows() != static_cast<Eigen::Index>(estimator.outer()) * estimator.inner()) {
    throw std::invalid_argument(fmt::format(
        "EIG: sample set is ({}, {}) but the estimator expects ({}, {})", samples.outer(),
        samples.inner(), estimator.outer(), estimator.inner()));
  }
}

void check_finite(const Eigen::VectorXd& g, const Eigen::VectorXd& theta) {
  if (!g.allFinite()) {
    throw std::runtime_error(fmt::format("EIG: non-finite model output at theta = [{}]",
                                         fmt::join(theta.data(), theta.data() + theta.size(), ", ")));
  }
}

// Contribution of outer sample i; also accumulates its gradient when asked.
double outer_term(const EIGEstimator& est, const Eigen::VectorXd& d, const EIGSampleSet& samples,
                  Eigen::Index i, Eigen::VectorXd* gradient) {
  const auto& model = est.model();
  const auto& noise = est.noise();
  const int m = est.inner();
  const Eigen::Index n_d = d.size();

  Eigen::VectorXd theta = samples.thetas_outer.row(i).transpose();
  Eigen::VectorXd g_outer;
  Eigen::MatrixXd j_outer;
  if (gradient) {
    model.value_and_design_gradient(theta, d, g_outer, j_outer);
  } else {
    g_outer = model.value(theta, d);
  }
  check_finite(g_outer, theta);
  const Eigen::VectorXd z = samples.z.row(i).transpose();
  const Eigen::VectorXd y = g_outer + noise.sigma(g_outer).cwiseProduct(z);
  const double outer_ll = detail::log_likelihood(y, g_outer, noise.alpha(), noise.beta());

  Eigen::VectorXd inner_ll(m);
  Eigen::MatrixXd scores;
  if (gradient) scores.resize(n_d, m);
  Eigen::VectorXd g_inner;
  Eigen::MatrixXd j_inner;
  const bool shortcut = est.constant_noise_shortcut() && noise.constant();
  for (int j = 0; j < m; ++j) {
    theta = samples.thetas_inner.row(i * m + j).transpose();
    if (gradient) {
      model.value_and_design_gradient(theta, d, g_inner, j_inner);
    } else {
      g_inner = model.value(theta, d);
    }
    check_finite(g_inner, theta);
    inner_ll[j] = detail::log_likelihood(y, g_inner, noise.alpha(), noise.beta());
    if (gradient) {
      if (shortcut) {
        detail::inner_log_likelihood_gradient_constant_noise(g_inner, j_inner, g_outer, j_outer, z,
                                                             noise, scores.col(j));
      } else {
        detail::inner_log_likelihood_gradient(g_inner, j_inner, g_outer, j_outer, z, noise,
                                              scores.col(j));
      }
    }
  }
  const double term = outer_ll - detail::log_mean_exp(inner_ll);

  if (gradient) {
    // sum_j f_j' / sum_j f_j == sum_j w_j (ln f_j)' with softmax weights w.
    const double peak = inner_ll.maxCoeff();
    const Eigen::VectorXd weights = (inner_ll.array() - peak).exp().matrix();
    Eigen::VectorXd outer_score(n_d);
    detail::outer_log_likelihood_gradient(g_outer, j_outer, noise, outer_score);
    *gradient = outer_score - scores * weights / weights.sum();
  }
  return term;
}

}  // namespace

std::vector<double> eig_value_terms(const EIGEstimator& estimator, const Eigen::VectorXd& d,
                                    const EIGSampleSet& samples) {
  check_inputs(estimator, d, samples);
  std::vector<double> terms(static_cast<std::size_t>(estimator.outer()));
  util::parallel_for(terms.size(), estimator.workers(), [&](std::size_t i) {
    terms[i] = outer_term(estimator, d, samples, static_cast<Eigen::Index>(i), nullptr);
  });
  return terms;
}

double eig_value(const EIGEstimator& estimator, const Eigen::VectorXd& d,
                 const EIGSampleSet& samples) {
  const auto terms = eig_value_terms(estimator, d, samples);
  double sum = 0.0;
  for (double t : terms) sum += t;
  return sum / static_cast<double>(terms.size());
}

EIGValueAndGrad eig_gradient(const EIGEstimator& estimator, const Eigen::VectorXd& d,
                             const EIGSampleSet& samples) {
  check_inputs(estimator, d, samples);
  if (!estimator.model().has_design_gradient()) {
    throw std::invalid_argument("eig_gradient: forward model has no design gradient");
  }
  const auto n = static_cast<std::size_t>(estimator.outer());
  std::vector<double> terms(n);
  std::vector<Eigen::VectorXd> gradients(n);
  util::parallel_for(n, estimator.workers(), [&](std::size_t i) {
    terms[i] = outer_term(estimator, d, samples, static_cast<Eigen::Index>(i), &gradients[i]);
  });
  EIGValueAndGrad result;
  double sum = 0.0;
  for (double t : terms) sum += t;
  result.value = sum / static_cast<double>(n);
  result.gradient = Eigen::VectorXd::Zero(d.size());
  for (const auto& g : gradients) result.gradient += g;
  result.gradient /= static_cast<double>(n);
  if (std::isfinite(result.value) && !result.gradient.allFinite()) {
    throw std::runtime_error("eig_gradient: non-finite gradient");
  }
  result.n_model_evals = static_cast<long long>(n) * (estimator.inner() + 1);
  return result;
}

double eig_value_fresh(const EIGEstimator& estimator, const Eigen::VectorXd& d, std::uint64_t seed) {
  return eig_value(estimator, d, draw_sample_set(estimator, seed));
}

}  // namespace boed::eig
