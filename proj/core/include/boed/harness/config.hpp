#ifndef BOED_HARNESS_CONFIG_HPP
#define BOED_HARNESS_CONFIG_HPP

#include "boed/eig/noise.hpp"
#include "boed/eig/prior.hpp"
#include "boed/models/diffusion.hpp"
#include "boed/models/forward_model.hpp"
#include "boed/models/surrogate_model.hpp"
#include "boed/optim/bfgs.hpp"
#include "boed/optim/robbins_monro.hpp"
#include "boed/util/bounds.hpp"

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace boed::harness {

enum class Algorithm { rm, saa };

std::string_view to_string(Algorithm algorithm);
Algorithm algorithm_from_string(std::string_view name);

enum class ModelKind {
  diffusion_surrogate,  ///< polynomial surrogate of the diffusion model (loaded or built)
  diffusion_direct,     ///< finite-difference solves inside the estimator; slow
  linear_gaussian,      ///< G = d . theta, closed-form information gain
  parameter_free,       ///< outputs ignore theta; information gain is zero
};

std::string_view to_string(ModelKind kind);
ModelKind model_kind_from_string(std::string_view name);

struct ModelSpec {
  ModelKind kind = ModelKind::diffusion_surrogate;
  /// Surrogate JSON to load; built in memory from `surrogate` when empty.
  std::filesystem::path surrogate_path;
  models::DiffusionConfig diffusion{};
  models::SurrogateBuildOptions surrogate{};
  double noise_alpha = 0.1;
  double noise_beta = 0.1;
  /// linear_gaussian only.
  double prior_std = 1.0;
  int dimension = 1;
  /// Design box; empty means the unit box of the model's design dimension.
  std::vector<double> design_lower;
  std::vector<double> design_upper;
};

struct ExperimentConfig {
  std::vector<Algorithm> algorithms{Algorithm::rm, Algorithm::saa};
  std::vector<int> n_list{1, 11, 101};
  std::vector<int> m_list{2, 11, 101};
  int replicates = 50;
  std::uint64_t seed = 0;
  int requality_n = 1001;
  int requality_m = 1001;
  /// 0 = one per hardware thread. Outputs do not depend on it.
  int workers = 0;
  /// When false every wall time is reported as 0 so reruns are byte-identical.
  bool record_timing = true;

  optim::RMOptions rm{};
  optim::BFGSOptions bfgs{};
  /// 0 = default min(10 N, 1001).
  int n_prime = 0;

  ModelSpec model{};

  void validate() const;
};

/// Everything the estimator needs besides sample sizes.
struct Problem {
  std::shared_ptr<const models::ForwardModel> model;
  eig::NoiseModel noise;
  eig::PriorSpec prior;
  DesignBounds bounds;
};

Problem make_problem(const ModelSpec& spec);

ExperimentConfig load_experiment_config(const std::filesystem::path& path);
ExperimentConfig parse_experiment_config(const std::string& json_text);
std::string experiment_config_to_json(const ExperimentConfig& config);

models::DiffusionConfig parse_diffusion_config(const std::string& json_text);

}  // namespace boed::harness

#endif  // BOED_HARNESS_CONFIG_HPP
