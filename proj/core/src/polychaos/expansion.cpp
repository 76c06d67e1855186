#include "boed/polychaos/expansion.hpp"

#include "boed/polychaos/legendre.hpp"
#include "boed/util/parallel.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <algorithm>
#include <cmath>
#include <vector>

namespace boed::polychaos {

AffineMap::AffineMap(double gamma_, double delta_) : gamma(gamma_), delta(delta_) {
  if (!(delta != 0.0) || !std::isfinite(delta) || !std::isfinite(gamma)) {
    throw std::invalid_argument("AffineMap: delta must be finite and non-zero");
  }
}

AffineMap AffineMap::from_bounds(double lower, double upper) {
  if (!(lower < upper)) throw std::invalid_argument("AffineMap: lower bound must be below upper");
  return AffineMap(0.5 * (lower + upper), 0.5 * (upper - lower));
}

double basis_norm_squared(const MultiIndex& index) {
  double norm = 1.0;
  for (int b : index) norm *= legendre_norm_squared(b);
  return norm;
}

PCExpansion::PCExpansion(IndexSet index_set, Eigen::MatrixXd coefficients,
                         std::vector<AffineMap> maps, int parameter_dimension, bool log_space)
    : PCExpansion(std::move(index_set), coefficients, std::move(maps), parameter_dimension,
                  std::vector<bool>(static_cast<std::size_t>(coefficients.rows()), log_space)) {}

PCExpansion::PCExpansion(IndexSet index_set, Eigen::MatrixXd coefficients,
                         std::vector<AffineMap> maps, int parameter_dimension,
                         std::vector<bool> log_space)
    : index_set_(std::move(index_set)),
      coefficients_(std::move(coefficients)),
      maps_(std::move(maps)),
      parameter_dimension_(parameter_dimension),
      log_space_(std::move(log_space)) {
  if (static_cast<Eigen::Index>(log_space_.size()) != coefficients_.rows()) {
    throw std::invalid_argument("PCExpansion: need one log_space flag per output");
  }
  if (static_cast<std::size_t>(coefficients_.cols()) != index_set_.size()) {
    throw std::invalid_argument("PCExpansion: coefficient columns must match the index set size");
  }
  if (coefficients_.rows() < 1) throw std::invalid_argument("PCExpansion: no outputs");
  if (static_cast<int>(maps_.size()) != index_set_.dimension()) {
    throw std::invalid_argument("PCExpansion: need one affine map per dimension");
  }
  if (parameter_dimension_ < 0 || parameter_dimension_ > index_set_.dimension()) {
    throw std::invalid_argument("PCExpansion: parameter dimension out of range");
  }
}

Eigen::VectorXd PCExpansion::standardize(const Eigen::VectorXd& theta,
                                         const Eigen::VectorXd& d) const {
  if (theta.size() != parameter_dimension_ || d.size() != design_dimension()) {
    throw std::invalid_argument(fmt::format(
        "PCExpansion: expected {} parameters and {} design variables, got {} and {}",
        parameter_dimension_, design_dimension(), theta.size(), d.size()));
  }
  Eigen::VectorXd xi(dimension());
  for (int l = 0; l < dimension(); ++l) {
    const double x = l < parameter_dimension_ ? theta[l] : d[l - parameter_dimension_];
    const double s = maps_[static_cast<std::size_t>(l)].to_standard(x);
    if (!(std::abs(s) <= 1.0 + kDomainTolerance)) {
      throw std::domain_error(fmt::format(
          "PCExpansion: input {} = {} maps to {} outside [-1, 1]", l, x, s));
    }
    xi[l] = std::clamp(s, -1.0, 1.0);
  }
  return xi;
}

void PCExpansion::basis(const Eigen::VectorXd& xi, Eigen::VectorXd& psi,
                        Eigen::MatrixXd* dpsi) const {
  const int dim = dimension();
  const int p = index_set_.degree();
  const auto stride = static_cast<std::size_t>(p + 1);
  std::vector<double> values(stride * static_cast<std::size_t>(dim));
  std::vector<double> derivs(stride * static_cast<std::size_t>(dim));
  for (int l = 0; l < dim; ++l) {
    const auto offset = stride * static_cast<std::size_t>(l);
    legendre_table(p, xi[l], std::span(values).subspan(offset, stride),
                   std::span(derivs).subspan(offset, stride));
  }
  auto value_of = [&](int l, int degree) {
    return values[stride * static_cast<std::size_t>(l) + static_cast<std::size_t>(degree)];
  };
  auto deriv_of = [&](int l, int degree) {
    return derivs[stride * static_cast<std::size_t>(l) + static_cast<std::size_t>(degree)];
  };

  const auto n_terms = static_cast<Eigen::Index>(terms());
  psi.resize(n_terms);
  const int n_d = design_dimension();
  if (dpsi) dpsi->resize(n_terms, n_d);
  for (Eigen::Index t = 0; t < n_terms; ++t) {
    const auto& b = index_set_[static_cast<std::size_t>(t)];
    double product = 1.0;
    for (int l = 0; l < dim; ++l) product *= value_of(l, b[static_cast<std::size_t>(l)]);
    psi[t] = product;
    if (!dpsi) continue;
    for (int a = 0; a < n_d; ++a) {
      const int la = a + parameter_dimension_;
      double partial = 1.0;
      for (int l = 0; l < dim; ++l) {
        const int degree = b[static_cast<std::size_t>(l)];
        partial *= (l == la) ? deriv_of(l, degree) : value_of(l, degree);
      }
      (*dpsi)(t, a) = partial / maps_[static_cast<std::size_t>(la)].delta;
    }
  }
}

Eigen::VectorXd PCExpansion::evaluate(const Eigen::VectorXd& theta,
                                      const Eigen::VectorXd& d) const {
  Eigen::VectorXd psi;
  basis(standardize(theta, d), psi, nullptr);
  Eigen::VectorXd value = coefficients_ * psi;
  for (Eigen::Index c = 0; c < value.size(); ++c) {
    if (log_space_[static_cast<std::size_t>(c)]) value[c] = std::exp(value[c]);
  }
  return value;
}

Eigen::MatrixXd PCExpansion::gradient_wrt_design(const Eigen::VectorXd& theta,
                                                 const Eigen::VectorXd& d) const {
  Eigen::VectorXd value;
  Eigen::MatrixXd jacobian;
  evaluate_with_gradient(theta, d, value, jacobian);
  return jacobian;
}

void PCExpansion::evaluate_with_gradient(const Eigen::VectorXd& theta, const Eigen::VectorXd& d,
                                         Eigen::VectorXd& value,
                                         Eigen::MatrixXd& jacobian) const {
  Eigen::VectorXd psi;
  Eigen::MatrixXd dpsi;
  basis(standardize(theta, d), psi, &dpsi);
  value = coefficients_ * psi;
  jacobian = coefficients_ * dpsi;
  for (Eigen::Index c = 0; c < value.size(); ++c) {
    if (!log_space_[static_cast<std::size_t>(c)]) continue;
    value[c] = std::exp(value[c]);
    jacobian.row(c) *= value[c];
  }
}

PCExpansion project(const ModelEvaluator& model, const IndexSet& index_set,
                    const QuadratureRule& rule, const std::vector<AffineMap>& maps,
                    int parameter_dimension, const ProjectionOptions& options) {
  const int dim = index_set.dimension();
  if (rule.dimension() != dim || static_cast<int>(maps.size()) != dim) {
    throw std::invalid_argument(fmt::format(
        "project: dimensions disagree (index set {}, rule {}, maps {})", dim, rule.dimension(),
        maps.size()));
  }
  if (parameter_dimension < 0 || parameter_dimension > dim) {
    throw std::invalid_argument("project: parameter dimension out of range");
  }
  const auto n_nodes = rule.size();
  const int n_d = dim - parameter_dimension;

  auto physical = [&](std::size_t q, Eigen::VectorXd& theta, Eigen::VectorXd& d) {
    theta.resize(parameter_dimension);
    d.resize(n_d);
    for (int l = 0; l < dim; ++l) {
      const double x =
          maps[static_cast<std::size_t>(l)].to_physical(rule.nodes(static_cast<Eigen::Index>(q), l));
      if (l < parameter_dimension) {
        theta[l] = x;
      } else {
        d[l - parameter_dimension] = x;
      }
    }
  };

  std::vector<Eigen::VectorXd> outputs(n_nodes);
  util::parallel_for(n_nodes, options.workers, [&](std::size_t q) {
    Eigen::VectorXd theta, d;
    physical(q, theta, d);
    outputs[q] = model(theta, d);
  });

  const auto n_y = outputs.empty() ? Eigen::Index{0} : outputs.front().size();
  if (n_y == 0) throw ProjectionError("project: model returned no outputs");
  std::vector<bool> log_space = options.log_outputs;
  if (log_space.empty()) log_space.assign(static_cast<std::size_t>(n_y), options.log_space);
  if (static_cast<Eigen::Index>(log_space.size()) != n_y) {
    throw std::invalid_argument(fmt::format("project: {} log_outputs flags for {} outputs", log_space.size(), n_y));
  }
  for (std::size_t q = 0; q < n_nodes; ++q) {
    auto& f = outputs[q];
    const bool finite = f.size() == n_y && f.allFinite();
    bool positive = true;
    for (Eigen::Index c = 0; finite && c < n_y; ++c) {
      if (log_space[static_cast<std::size_t>(c)] && !(f[c] > 0.0)) positive = false;
    }
    if (!finite || !positive) {
      Eigen::VectorXd theta, d;
      physical(q, theta, d);
      throw ProjectionError(fmt::format(
          "project: {} model output at node {} (theta = [{}], d = [{}])",
          finite ? "non-positive" : "non-finite", q,
          fmt::join(theta.data(), theta.data() + theta.size(), ", "),
          fmt::join(d.data(), d.data() + d.size(), ", ")));
    }
    for (Eigen::Index c = 0; c < n_y; ++c) {
      if (log_space[static_cast<std::size_t>(c)]) f[c] = std::log(f[c]);
    }
  }

  Eigen::MatrixXd coefficients = Eigen::MatrixXd::Zero(n_y, static_cast<Eigen::Index>(index_set.size()));
  Eigen::VectorXd psi(static_cast<Eigen::Index>(index_set.size()));
  std::vector<double> values(static_cast<std::size_t>(index_set.degree() + 1));
  std::vector<double> derivs(values.size());
  std::vector<std::vector<double>> table(static_cast<std::size_t>(dim));
  for (std::size_t q = 0; q < n_nodes; ++q) {
    for (int l = 0; l < dim; ++l) {
      legendre_table(index_set.degree(), rule.nodes(static_cast<Eigen::Index>(q), l), values, derivs);
      table[static_cast<std::size_t>(l)] = values;
    }
    for (std::size_t t = 0; t < index_set.size(); ++t) {
      double product = 1.0;
      for (int l = 0; l < dim; ++l) {
        product *= table[static_cast<std::size_t>(l)][static_cast<std::size_t>(index_set[t][static_cast<std::size_t>(l)])];
      }
      psi[static_cast<Eigen::Index>(t)] = product;
    }
    coefficients.noalias() += (rule.weights[static_cast<Eigen::Index>(q)] * outputs[q]) * psi.transpose();
  }
  for (std::size_t t = 0; t < index_set.size(); ++t) {
    coefficients.col(static_cast<Eigen::Index>(t)) /= basis_norm_squared(index_set[t]);
  }
  return PCExpansion(index_set, std::move(coefficients), maps, parameter_dimension,
                     std::move(log_space));
}

}  // namespace boed::polychaos
