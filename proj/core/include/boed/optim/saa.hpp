#ifndef BOED_OPTIM_SAA_HPP
#define BOED_OPTIM_SAA_HPP

#include "boed/eig/estimator.hpp"
#include "boed/optim/bfgs.hpp"
#include "boed/optim/trace.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace boed::optim {

/// Optimality-gap estimate for one SAA replicate, oriented for maximization:
/// `upper` is the mean of the replicate optima (biased upward), `lower` the
/// independent re-evaluation of this replicate's design with N' outer samples.
struct GapEstimate {
  double upper = 0.0;
  double lower = 0.0;
  double gap = 0.0;  ///< upper - lower
  double variance = 0.0;
};

struct SAAOptions {
  int replicates = 1;
  /// Outer samples for the lower bound; 0 selects min(10 N, 1001), at least N + 1.
  int n_prime = 0;
  BFGSOptions bfgs{};
  std::uint64_t seed = 0;
  /// Replicates run concurrently; results are keyed by replicate index.
  int workers = 1;
};

struct SAAReplicate {
  int index = 0;
  bool failed = false;
  std::string error;
  OptimizationTrace trace;
  double optimum = 0.0;          ///< U_{N,M} at the final design, frozen samples
  double lower = 0.0;            ///< U_{N',M} at the final design, fresh samples
  double lower_variance = 0.0;   ///< Monte Carlo variance of `lower`
  GapEstimate gap;
};

struct SAAResult {
  std::vector<SAAReplicate> replicates;
  int n_prime = 0;
  double upper = 0.0;           ///< mean optimum over successful replicates
  double upper_variance = 0.0;  ///< sample variance of the optima / T
};

int default_n_prime(int outer);

/// Seeds used by replicate t of an SAA batch rooted at `seed`.
struct SAASeeds {
  std::uint64_t start;
  std::uint64_t frozen;
  std::uint64_t lower;
};
SAASeeds saa_seeds(std::uint64_t seed, int replicate);

/// Sample average approximation: each replicate freezes one sample set, runs
/// BFGS on the resulting deterministic objective from a uniform random start,
/// then re-evaluates its optimum on a larger independent sample set.
/// Replicates that throw are recorded as failed and excluded from the bounds.
SAAResult saa_optimize(const eig::EIGEstimator& estimator, const SAAOptions& options);

}  // namespace boed::optim

#endif  // BOED_OPTIM_SAA_HPP
