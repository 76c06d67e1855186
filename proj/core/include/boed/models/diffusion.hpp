#ifndef BOED_MODELS_DIFFUSION_HPP
#define BOED_MODELS_DIFFUSION_HPP

#include "boed/models/forward_model.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include <array>
#include <cstddef>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <utility>
#include <vector>

namespace boed::models {

/// Contaminant release on the unit square: a Gaussian source of strength s
/// and width h centred at the (unknown) source location, switched off at tau.
struct DiffusionConfig {
  double source_strength = 2.0;
  double source_width = 0.05;
  double shutoff_time = 0.3;
  int grid_n = 25;
  double t_final = 0.6;
  double dt = 1e-3;
  std::vector<double> obs_times{0.12, 0.24, 0.36, 0.48, 0.60};

  void validate() const;
};

/// Immutable space-time solution. Nodal values are kept at the requested
/// time levels only; the trapezoidal mass is kept at every step.
class DiffusionField {
 public:
  DiffusionField(int grid_n, double dt, std::vector<double> times,
                 std::vector<Eigen::VectorXd> levels, std::vector<double> mass_history);

  int grid_n() const { return grid_n_; }
  const std::vector<double>& times() const { return times_; }
  const Eigen::VectorXd& nodal(std::size_t level) const { return levels_.at(level); }

  /// Bilinear interpolation at (x, y) in [0,1]^2 on a stored time level.
  /// Throws std::out_of_range when t is not one of the stored times.
  double at(double x, double y, double t) const;
  double at_level(double x, double y, std::size_t level) const;

  /// Trapezoidal integral of w over the square after each step; entry 0 is t = 0.
  const std::vector<double>& mass_history() const { return mass_history_; }
  double dt() const { return dt_; }

 private:
  int grid_n_;
  double dt_;
  std::vector<double> times_;
  std::vector<Eigen::VectorXd> levels_;
  std::vector<double> mass_history_;
};

/// Second-order centred differences on a grid_n x grid_n node grid with
/// homogeneous Neumann walls, BDF4 in time (BDF1-3 for the first three
/// steps), zero initial condition. The four implicit operators are
/// factorized once and reused for every solve.
class DiffusionSolver {
 public:
  using Forcing = std::function<void(double t, Eigen::VectorXd& f)>;

  explicit DiffusionSolver(DiffusionConfig config);

  const DiffusionConfig& config() const { return config_; }
  int nodes() const { return config_.grid_n * config_.grid_n; }
  double spacing() const { return 1.0 / (config_.grid_n - 1); }

  /// Source centred at `source`; stores the configured observation times
  /// unless `store_times` is given.
  DiffusionField solve(const Eigen::Vector2d& source, std::span<const double> store_times = {}) const;

  /// dw/dt = L w + f(t) from w(0) = 0, where f(t) is filled by `forcing`
  /// at each new time level. At each of `restart_times` (rounded to the
  /// nearest step boundary) the multistep history is discarded and the
  /// BDF1-3 bootstrap is repeated, for forcings that jump there.
  DiffusionField integrate(const Forcing& forcing, std::span<const double> store_times,
                           std::span<const double> restart_times = {}) const;

  /// Gaussian source profile sampled at the grid nodes.
  Eigen::VectorXd source_profile(const Eigen::Vector2d& source) const;
  Eigen::VectorXd apply_laplacian(const Eigen::VectorXd& w) const;
  /// Trapezoidal quadrature of nodal values over the square.
  double integrate_nodal(const Eigen::VectorXd& w) const;

 private:
  DiffusionConfig config_;
  Eigen::SparseMatrix<double> laplacian_;
  Eigen::VectorXd trapezoid_weights_;
  std::array<std::unique_ptr<Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>>, 4> factors_;
  int steps_;
};

/// The source-inversion experiment: theta = source location, d = sensor
/// location, outputs = concentration at the sensor at each observation time.
/// Solved fields are memoized per source location.
class DiffusionForwardModel final : public ForwardModel {
 public:
  explicit DiffusionForwardModel(DiffusionConfig config, std::size_t cache_capacity = 256);

  int parameter_dimension() const override { return 2; }
  int design_dimension() const override { return 2; }
  int output_dimension() const override { return static_cast<int>(solver_.config().obs_times.size()); }

  Eigen::VectorXd value(const Eigen::VectorXd& theta, const Eigen::VectorXd& d) const override;

  std::shared_ptr<const DiffusionField> field(const Eigen::Vector2d& source) const;
  const DiffusionSolver& solver() const { return solver_; }
  std::size_t solves() const;

 private:
  DiffusionSolver solver_;
  std::size_t cache_capacity_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<double, double>, std::shared_ptr<const DiffusionField>> cache_;
  mutable std::deque<std::pair<double, double>> order_;
  mutable std::size_t solves_ = 0;
};

}  // namespace boed::models

#endif  // BOED_MODELS_DIFFUSION_HPP
