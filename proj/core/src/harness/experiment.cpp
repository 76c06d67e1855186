#include "boed/harness/experiment.hpp"

#include "boed/eig/estimator.hpp"
#include "boed/optim/rm_driver.hpp"
#include "boed/util/parallel.hpp"
#include "boed/util/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <tuple>

namespace boed::harness {

namespace {

// Stream tags for the harness; disjoint from the optimizer-internal tags
// because every optimizer stream is rooted at a cell seed derived here.
constexpr std::uint64_t kOptimize = 0x4f50;
constexpr std::uint64_t kReestimate = 0x5245;

std::uint64_t algorithm_tag(Algorithm a) { return a == Algorithm::rm ? 1 : 2; }

}  // namespace

std::uint64_t cell_seed(std::uint64_t master, Algorithm algorithm, int n, int m) {
  return util::derive_seed(master, {kOptimize, algorithm_tag(algorithm), static_cast<std::uint64_t>(n),
                                    static_cast<std::uint64_t>(m)});
}

std::uint64_t reestimate_seed(std::uint64_t master, Algorithm algorithm, int n, int m, int t) {
  return util::derive_seed(master, {kReestimate, algorithm_tag(algorithm), static_cast<std::uint64_t>(n),
                                    static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(t)});
}

double mse_of_cell(std::span<const double> re_estimates, double u_ref) {
  if (re_estimates.empty()) throw std::invalid_argument("mse_of_cell: empty list of re-estimates");
  double sum = 0.0;
  for (double u : re_estimates) sum += (u - u_ref) * (u - u_ref);
  return sum / static_cast<double>(re_estimates.size());
}

void summarize(ExperimentMatrixResult& result) {
  result.cells.clear();
  double u_ref = -std::numeric_limits<double>::infinity();
  for (const auto& r : result.records) {
    if (!r.failed) u_ref = std::max(u_ref, r.u_hat);
  }
  result.u_ref = std::isfinite(u_ref) ? u_ref : 0.0;

  // Cells in first-appearance order, which is the run order.
  std::vector<std::tuple<Algorithm, int, int>> order;
  std::map<std::tuple<Algorithm, int, int>, std::vector<const ReplicateRecord*>> groups;
  for (const auto& r : result.records) {
    auto key = std::make_tuple(r.algorithm, r.n, r.m);
    if (!groups.count(key)) order.push_back(key);
    groups[key].push_back(&r);
  }
  for (const auto& key : order) {
    CellSummary cell;
    std::tie(cell.algorithm, cell.n, cell.m) = key;
    std::vector<double> u;
    double runtime = 0.0;
    for (const auto* r : groups[key]) {
      if (r->failed) {
        ++cell.failed;
        continue;
      }
      ++cell.completed;
      u.push_back(r->u_hat);
      runtime += r->wall_s;
    }
    if (!u.empty()) {
      cell.mean_runtime_s = runtime / static_cast<double>(u.size());
      double s = 0.0;
      for (double v : u) s += v;
      cell.mean_u_hat = s / static_cast<double>(u.size());
      cell.mse = mse_of_cell(u, result.u_ref);
    }
    result.cells.push_back(cell);
  }
}

ExperimentMatrixResult run_matrix(const ExperimentConfig& config, const Problem& problem) {
  config.validate();
  if (!problem.model) throw std::invalid_argument("run_matrix: problem has no model");
  const int workers = util::resolve_workers(config.workers);

  ExperimentMatrixResult result;
  result.config = config;

  for (Algorithm algorithm : config.algorithms) {
    for (int n : config.n_list) {
      for (int m : config.m_list) {
        const eig::EIGEstimator estimator(problem.model, problem.noise, problem.prior, n, m, problem.bounds);
        const std::uint64_t seed = cell_seed(config.seed, algorithm, n, m);
        const std::size_t first = result.records.size();

        if (algorithm == Algorithm::rm) {
          optim::RMRunOptions opts;
          opts.replicates = config.replicates;
          opts.rm = config.rm;
          opts.seed = seed;
          opts.workers = workers;
          for (auto& run : optim::rm_optimize(estimator, opts)) {
            ReplicateRecord rec;
            rec.algorithm = algorithm;
            rec.n = n;
            rec.m = m;
            rec.t = run.index;
            rec.failed = run.failed;
            rec.error = run.error;
            if (!run.failed) {
              rec.design = run.trace.final_design();
              rec.termination = std::string(optim::to_string(run.trace.termination));
              rec.iterations = run.trace.iterations;
              rec.n_objective_evals = run.trace.n_objective_evals;
              rec.n_gradient_evals = run.trace.n_gradient_evals;
              rec.wall_s = config.record_timing ? run.trace.wall_time : 0.0;
              rec.final_objective = run.final_value;
            }
            result.records.push_back(std::move(rec));
          }
        } else {
          optim::SAAOptions opts;
          opts.replicates = config.replicates;
          opts.n_prime = config.n_prime;
          opts.bfgs = config.bfgs;
          opts.seed = seed;
          opts.workers = workers;
          auto saa = optim::saa_optimize(estimator, opts);
          for (auto& rep : saa.replicates) {
            ReplicateRecord rec;
            rec.algorithm = algorithm;
            rec.n = n;
            rec.m = m;
            rec.t = rep.index;
            rec.failed = rep.failed;
            rec.error = rep.error;
            if (!rep.failed) {
              rec.design = rep.trace.final_design();
              rec.termination = std::string(optim::to_string(rep.trace.termination));
              rec.iterations = rep.trace.iterations;
              rec.n_objective_evals = rep.trace.n_objective_evals;
              rec.n_gradient_evals = rep.trace.n_gradient_evals;
              rec.wall_s = config.record_timing ? rep.trace.wall_time : 0.0;
              rec.final_objective = rep.optimum;
              rec.gap = rep.gap;
            }
            result.records.push_back(std::move(rec));
          }
        }

        // High-quality re-estimates on streams no optimizer ever touches.
        const auto quality = estimator.with_sizes(config.requality_n, config.requality_m);
        util::parallel_for(result.records.size() - first, workers, [&](std::size_t k) {
          auto& rec = result.records[first + k];
          if (rec.failed) return;
          try {
            rec.u_hat = eig::eig_value_fresh(quality, rec.design,
                                             reestimate_seed(config.seed, algorithm, n, m, rec.t));
          } catch (const std::exception& e) {
            rec.failed = true;
            rec.error = std::string("re-estimate: ") + e.what();
          }
        });
      }
    }
  }
  summarize(result);
  return result;
}

}  // namespace boed::harness
