#include "boed/models/diffusion.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace boed::models {

namespace {

struct BdfScheme {
  double beta;                  // coefficient of dt * rhs
  std::array<double, 4> history;  // multipliers of w_n, w_{n-1}, ...
};

constexpr std::array<BdfScheme, 4> kBdf{{
    {1.0, {1.0, 0.0, 0.0, 0.0}},
    {2.0 / 3.0, {4.0 / 3.0, -1.0 / 3.0, 0.0, 0.0}},
    {6.0 / 11.0, {18.0 / 11.0, -9.0 / 11.0, 2.0 / 11.0, 0.0}},
    {12.0 / 25.0, {48.0 / 25.0, -36.0 / 25.0, 16.0 / 25.0, -3.0 / 25.0}},
}};

constexpr double kTimeMatchTolerance = 1e-9;

}  // namespace

void DiffusionConfig::validate() const {
  if (!std::isfinite(source_strength)) throw std::invalid_argument("DiffusionConfig: s must be finite");
  if (!(source_width > 0.0)) throw std::invalid_argument("DiffusionConfig: h must be > 0");
  if (!(shutoff_time > 0.0)) throw std::invalid_argument("DiffusionConfig: tau must be > 0");
  if (grid_n < 5) throw std::invalid_argument("DiffusionConfig: grid_n must be >= 5");
  if (!(dt > 0.0) || !(t_final > 0.0)) {
    throw std::invalid_argument("DiffusionConfig: dt and t_final must be > 0");
  }
  if (obs_times.empty()) throw std::invalid_argument("DiffusionConfig: no observation times");
  for (std::size_t k = 0; k < obs_times.size(); ++k) {
    if (!(obs_times[k] > 0.0) || obs_times[k] > t_final + kTimeMatchTolerance) {
      throw std::invalid_argument("DiffusionConfig: observation times must lie in (0, t_final]");
    }
    if (k > 0 && !(obs_times[k] > obs_times[k - 1])) {
      throw std::invalid_argument("DiffusionConfig: observation times must be strictly increasing");
    }
  }
}

DiffusionField::DiffusionField(int grid_n, double dt, std::vector<double> times,
                               std::vector<Eigen::VectorXd> levels,
                               std::vector<double> mass_history)
    : grid_n_(grid_n),
      dt_(dt),
      times_(std::move(times)),
      levels_(std::move(levels)),
      mass_history_(std::move(mass_history)) {}

double DiffusionField::at(double x, double y, double t) const {
  for (std::size_t k = 0; k < times_.size(); ++k) {
    if (std::abs(times_[k] - t) <= kTimeMatchTolerance * std::max(1.0, std::abs(t))) {
      return at_level(x, y, k);
    }
  }
  throw std::out_of_range(fmt::format("DiffusionField: time {} is not a stored level", t));
}

double DiffusionField::at_level(double x, double y, std::size_t level) const {
  constexpr double tol = 1e-12;
  if (!(x >= -tol && x <= 1.0 + tol && y >= -tol && y <= 1.0 + tol)) {
    throw std::domain_error(fmt::format("DiffusionField: point ({}, {}) outside the unit square", x, y));
  }
  const auto& w = levels_.at(level);
  const int cells = grid_n_ - 1;
  const double gx = std::clamp(x, 0.0, 1.0) * cells;
  const double gy = std::clamp(y, 0.0, 1.0) * cells;
  const int i = std::min(static_cast<int>(gx), cells - 1);
  const int j = std::min(static_cast<int>(gy), cells - 1);
  const double fx = gx - i;
  const double fy = gy - j;
  auto node = [&](int a, int b) { return w[a + grid_n_ * b]; };
  return (1.0 - fx) * (1.0 - fy) * node(i, j) + fx * (1.0 - fy) * node(i + 1, j) +
         (1.0 - fx) * fy * node(i, j + 1) + fx * fy * node(i + 1, j + 1);
}

DiffusionSolver::DiffusionSolver(DiffusionConfig config) : config_(std::move(config)) {
  config_.validate();
  const int n = config_.grid_n;
  const int total = n * n;
  const double inv_h2 = 1.0 / (spacing() * spacing());

  // Ghost-node Neumann closure: the missing neighbour mirrors the interior
  // one, doubling its coupling. W * L is then symmetric for the trapezoid
  // weights W, which makes the weighted mass an exact invariant.
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(static_cast<std::size_t>(total) * 5);
  auto index = [n](int i, int j) { return i + n * j; };
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int row = index(i, j);
      entries.emplace_back(row, row, -4.0 * inv_h2);
      auto couple = [&](int ii, int jj, int mirror_i, int mirror_j) {
        if (ii < 0 || ii >= n || jj < 0 || jj >= n) {
          entries.emplace_back(row, index(mirror_i, mirror_j), inv_h2);
        } else {
          entries.emplace_back(row, index(ii, jj), inv_h2);
        }
      };
      couple(i - 1, j, i + 1, j);
      couple(i + 1, j, i - 1, j);
      couple(i, j - 1, i, j + 1);
      couple(i, j + 1, i, j - 1);
    }
  }
  laplacian_.resize(total, total);
  laplacian_.setFromTriplets(entries.begin(), entries.end());

  trapezoid_weights_.resize(total);
  const double h = spacing();
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const double wx = (i == 0 || i == n - 1) ? 0.5 : 1.0;
      const double wy = (j == 0 || j == n - 1) ? 0.5 : 1.0;
      trapezoid_weights_[index(i, j)] = wx * wy * h * h;
    }
  }

  Eigen::SparseMatrix<double> weights(total, total);
  weights.reserve(Eigen::VectorXi::Constant(total, 1));
  for (int k = 0; k < total; ++k) weights.insert(k, k) = trapezoid_weights_[k];
  const Eigen::SparseMatrix<double> weighted_laplacian = weights * laplacian_;
  for (std::size_t order = 0; order < kBdf.size(); ++order) {
    Eigen::SparseMatrix<double> system = weights - (kBdf[order].beta * config_.dt) * weighted_laplacian;
    system.makeCompressed();
    auto factor = std::make_unique<Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>>(system);
    if (factor->info() != Eigen::Success) {
      throw std::runtime_error("DiffusionSolver: factorization of the implicit operator failed");
    }
    factors_[order] = std::move(factor);
  }
  steps_ = static_cast<int>(std::llround(config_.t_final / config_.dt));
}

Eigen::VectorXd DiffusionSolver::source_profile(const Eigen::Vector2d& source) const {
  const int n = config_.grid_n;
  const double h = config_.source_width;
  const double scale = config_.source_strength / (2.0 * std::numbers::pi * h * h);
  Eigen::VectorXd profile(nodes());
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const double dx = source[0] - i * spacing();
      const double dy = source[1] - j * spacing();
      profile[i + n * j] = scale * std::exp(-(dx * dx + dy * dy) / (2.0 * h * h));
    }
  }
  return profile;
}

Eigen::VectorXd DiffusionSolver::apply_laplacian(const Eigen::VectorXd& w) const {
  return laplacian_ * w;
}

double DiffusionSolver::integrate_nodal(const Eigen::VectorXd& w) const {
  return trapezoid_weights_.dot(w);
}

DiffusionField DiffusionSolver::solve(const Eigen::Vector2d& source,
                                      std::span<const double> store_times) const {
  if (!source.allFinite() || source.minCoeff() < 0.0 || source.maxCoeff() > 1.0) {
    throw std::domain_error(fmt::format("DiffusionSolver: source ({}, {}) outside the unit square",
                                        source[0], source[1]));
  }
  const Eigen::VectorXd profile = source_profile(source);
  const double tau = config_.shutoff_time;
  const double half_step = 0.5 * config_.dt;
  // The step ending at t is forced when it starts before the shutoff.
  Forcing forcing = [&](double t, Eigen::VectorXd& f) {
    if (t - half_step < tau) {
      f = profile;
    } else {
      f.setZero(profile.size());
    }
  };
  if (store_times.empty()) store_times = config_.obs_times;
  const std::array<double, 1> restart{tau};
  return integrate(forcing, store_times, restart);
}

DiffusionField DiffusionSolver::integrate(const Forcing& forcing, std::span<const double> store_times,
                                          std::span<const double> restart_times) const {
  const double dt = config_.dt;
  std::vector<std::size_t> store_steps;
  for (double t : store_times) {
    const auto step = std::llround(t / dt);
    if (t < 0.0 || step > steps_ ||
        std::abs(static_cast<double>(step) * dt - t) > kTimeMatchTolerance * std::max(1.0, t)) {
      throw std::invalid_argument(
          fmt::format("DiffusionSolver: store time {} is not a multiple of dt within [0, t_final]", t));
    }
    store_steps.push_back(static_cast<std::size_t>(step));
  }

  const int total = nodes();
  std::vector<Eigen::VectorXd> stored(store_steps.size());
  auto store = [&](std::size_t step, const Eigen::VectorXd& w) {
    for (std::size_t k = 0; k < store_steps.size(); ++k) {
      if (store_steps[k] == step) stored[k] = w;
    }
  };

  // history[0] = w_n, history[1] = w_{n-1}, ...
  std::array<Eigen::VectorXd, 4> history;
  for (auto& h : history) h = Eigen::VectorXd::Zero(total);
  std::vector<double> mass;
  mass.reserve(static_cast<std::size_t>(steps_) + 1);
  mass.push_back(0.0);
  store(0, history[0]);

  Eigen::VectorXd rhs(total);
  Eigen::VectorXd f(total);
  std::vector<int> restart_steps;
  for (double t : restart_times) restart_steps.push_back(static_cast<int>(std::llround(t / dt)));

  int since_restart = 0;
  for (int n = 0; n < steps_; ++n) {
    const double t_next = (n + 1) * dt;
    if (n > 0 && std::find(restart_steps.begin(), restart_steps.end(), n) != restart_steps.end()) {
      since_restart = 0;
    }
    const auto order = static_cast<std::size_t>(std::min(since_restart++, 3));
    const auto& scheme = kBdf[order];
    forcing(t_next, f);
    rhs = (scheme.beta * dt) * f;
    for (std::size_t k = 0; k <= order; ++k) rhs += scheme.history[k] * history[k];
    Eigen::VectorXd next = factors_[order]->solve(trapezoid_weights_.cwiseProduct(rhs));
    if (!next.allFinite()) {
      throw std::runtime_error(fmt::format("DiffusionSolver: non-finite field at t = {}", t_next));
    }
    for (std::size_t k = history.size() - 1; k > 0; --k) history[k] = std::move(history[k - 1]);
    history[0] = std::move(next);
    mass.push_back(integrate_nodal(history[0]));
    store(static_cast<std::size_t>(n + 1), history[0]);
  }

  return DiffusionField(config_.grid_n, dt, std::vector<double>(store_times.begin(), store_times.end()),
                        std::move(stored), std::move(mass));
}

DiffusionForwardModel::DiffusionForwardModel(DiffusionConfig config, std::size_t cache_capacity)
    : solver_(std::move(config)), cache_capacity_(cache_capacity) {}

std::shared_ptr<const DiffusionField> DiffusionForwardModel::field(const Eigen::Vector2d& source) const {
  const std::pair<double, double> key{source[0], source[1]};
  {
    std::lock_guard lock(mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  auto solved = std::make_shared<const DiffusionField>(solver_.solve(source));
  std::lock_guard lock(mutex_);
  ++solves_;
  if (cache_capacity_ == 0) return solved;
  auto [it, inserted] = cache_.emplace(key, solved);
  if (inserted) {
    order_.push_back(key);
    while (order_.size() > cache_capacity_) {
      cache_.erase(order_.front());
      order_.pop_front();
    }
  }
  return it->second;
}

std::size_t DiffusionForwardModel::solves() const {
  std::lock_guard lock(mutex_);
  return solves_;
}

Eigen::VectorXd DiffusionForwardModel::value(const Eigen::VectorXd& theta,
                                             const Eigen::VectorXd& d) const {
  if (theta.size() != 2 || d.size() != 2) {
    throw std::invalid_argument("DiffusionForwardModel: theta and d must be 2-vectors");
  }
  const auto solved = field(Eigen::Vector2d(theta[0], theta[1]));
  Eigen::VectorXd out(output_dimension());
  for (int k = 0; k < out.size(); ++k) out[k] = solved->at_level(d[0], d[1], static_cast<std::size_t>(k));
  return out;
}

}  // namespace boed::models
