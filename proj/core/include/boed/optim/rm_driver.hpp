#ifndef BOED_OPTIM_RM_DRIVER_HPP
#define BOED_OPTIM_RM_DRIVER_HPP

#include "boed/eig/estimator.hpp"
#include "boed/optim/robbins_monro.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace boed::optim {

struct RMRunOptions {
  int replicates = 1;
  /// Bounds default to the estimator's design bounds when left empty.
  RMOptions rm{};
  std::uint64_t seed = 0;
  int workers = 1;
};

struct RMReplicate {
  int index = 0;
  bool failed = false;
  std::string error;
  OptimizationTrace trace;
  /// U_{N,M} at the final design on a fresh sample set.
  double final_value = 0.0;
};

struct RMSeeds {
  std::uint64_t start;
  std::uint64_t final_value;
};
RMSeeds rm_seeds(std::uint64_t seed, int replicate);
/// Sample-set seed for gradient draw k of replicate t.
std::uint64_t rm_iteration_seed(std::uint64_t seed, int replicate, int k);

/// Independent Robbins-Monro runs; every iteration draws a new sample set and
/// uses the IPA gradient of the nested estimator as the ascent direction.
std::vector<RMReplicate> rm_optimize(const eig::EIGEstimator& estimator, const RMRunOptions& options);

}  // namespace boed::optim

#endif  // BOED_OPTIM_RM_DRIVER_HPP
