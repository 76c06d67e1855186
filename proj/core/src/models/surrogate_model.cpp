#include "boed/models/surrogate_model.hpp"

#include "boed/util/parallel.hpp"
#include "boed/util/rng.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace boed::models {

SurrogateModel::SurrogateModel(polychaos::PCExpansion expansion) : expansion_(std::move(expansion)) {}

polychaos::PCExpansion build_diffusion_surrogate(const DiffusionForwardModel& model,
                                                 const SurrogateBuildOptions& options) {
  using namespace polychaos;
  constexpr int dimension = 4;
  const auto index_set = IndexSet::total_order(dimension, options.degree);
  QuadratureRule rule;
  if (options.quadrature == QuadratureKind::tensor) {
    const std::vector<int> levels(dimension, options.level);
    rule = tensor_quadrature(levels);
  } else {
    rule = smolyak_quadrature(dimension, options.level);
  }
  const std::vector<AffineMap> maps(dimension, AffineMap::from_bounds(0.0, 1.0));
  ProjectionOptions projection;
  projection.log_space = options.log_space;
  projection.workers = options.workers;
  return project([&](const Eigen::VectorXd& theta, const Eigen::VectorXd& d) { return model.value(theta, d); },
                 index_set, rule, maps, model.parameter_dimension(), projection);
}

SurrogateError surrogate_error(const ForwardModel& surrogate, const ForwardModel& reference, int samples,
                               std::uint64_t seed, int workers) {
  if (samples < 1) throw std::invalid_argument("surrogate_error: samples must be >= 1");
  const int nt = reference.parameter_dimension();
  const int nd = reference.design_dimension();
  const int ny = reference.output_dimension();
  if (surrogate.parameter_dimension() != nt || surrogate.design_dimension() != nd ||
      surrogate.output_dimension() != ny) {
    throw std::invalid_argument("surrogate_error: surrogate and reference dimensions differ");
  }

  // Points are drawn up front so the result does not depend on `workers`.
  auto engine = util::make_engine(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Eigen::MatrixXd points(samples, nt + nd);
  for (int i = 0; i < samples; ++i) {
    for (int k = 0; k < nt + nd; ++k) points(i, k) = unit(engine);
  }

  Eigen::MatrixXd diff(samples, ny);
  Eigen::MatrixXd ref(samples, ny);
  util::parallel_for(static_cast<std::size_t>(samples), workers, [&](std::size_t i) {
    const Eigen::VectorXd theta = points.row(static_cast<Eigen::Index>(i)).head(nt).transpose();
    const Eigen::VectorXd d = points.row(static_cast<Eigen::Index>(i)).tail(nd).transpose();
    const Eigen::VectorXd g = reference.value(theta, d);
    ref.row(static_cast<Eigen::Index>(i)) = g.transpose();
    diff.row(static_cast<Eigen::Index>(i)) = (surrogate.value(theta, d) - g).transpose();
  });

  SurrogateError err;
  err.samples = samples;
  err.per_output = (diff.colwise().squaredNorm().array() / ref.colwise().squaredNorm().array()).sqrt().transpose();
  err.aggregate = std::sqrt(diff.squaredNorm() / ref.squaredNorm());
  err.max_abs = diff.cwiseAbs().maxCoeff();
  return err;
}

}  // namespace boed::models
