#ifndef BOED_HARNESS_EXPERIMENT_HPP
#define BOED_HARNESS_EXPERIMENT_HPP

#include "boed/harness/config.hpp"
#include "boed/optim/saa.hpp"

#include <Eigen/Dense>

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace boed::harness {

/// One optimization run of one (algorithm, N, M) cell.
struct ReplicateRecord {
  Algorithm algorithm = Algorithm::rm;
  int n = 0;
  int m = 0;
  int t = 0;
  bool failed = false;
  std::string error;
  Eigen::VectorXd design;
  std::string termination;
  int iterations = 0;
  long long n_objective_evals = 0;
  long long n_gradient_evals = 0;
  double wall_s = 0.0;
  double final_objective = 0.0;
  /// High-quality re-estimate U_{requality_n, requality_m} at the final design.
  double u_hat = 0.0;
  std::optional<optim::GapEstimate> gap;
};

struct CellSummary {
  Algorithm algorithm = Algorithm::rm;
  int n = 0;
  int m = 0;
  int completed = 0;
  int failed = 0;
  double mean_runtime_s = 0.0;
  double mean_u_hat = 0.0;
  double mse = 0.0;
};

struct ExperimentMatrixResult {
  ExperimentConfig config;
  std::vector<ReplicateRecord> records;
  std::vector<CellSummary> cells;
  /// Largest re-estimate over every cell and algorithm of the run.
  double u_ref = 0.0;
};

/// Runs every (algorithm, N, M) cell with T replicates, then re-estimates
/// each final design on randomness disjoint from the optimization streams.
ExperimentMatrixResult run_matrix(const ExperimentConfig& config, const Problem& problem);

/// (1/T) sum_t (u_t - u_ref)^2.
double mse_of_cell(std::span<const double> re_estimates, double u_ref);

/// Seed of the high-quality re-estimate of replicate t in a cell.
std::uint64_t reestimate_seed(std::uint64_t master, Algorithm algorithm, int n, int m, int t);
/// Master seed handed to the optimizer driver of a cell.
std::uint64_t cell_seed(std::uint64_t master, Algorithm algorithm, int n, int m);

/// Recomputes u_ref and the per-cell summaries from the records.
void summarize(ExperimentMatrixResult& result);

}  // namespace boed::harness

#endif  // BOED_HARNESS_EXPERIMENT_HPP
