#include "boed/optim/rm_driver.hpp"

#include "boed/util/parallel.hpp"
#include "boed/util/rng.hpp"
#include "seed_tags.hpp"

#include <chrono>
#include <stdexcept>

namespace boed::optim {

RMSeeds rm_seeds(std::uint64_t seed, int replicate) {
  const auto t = static_cast<std::uint64_t>(replicate);
  return {util::derive_seed(seed, {tags::kRm, t, tags::kStart}),
          util::derive_seed(seed, {tags::kRm, t, tags::kFinalValue})};
}

std::uint64_t rm_iteration_seed(std::uint64_t seed, int replicate, int k) {
  return util::derive_seed(seed, {tags::kRm, static_cast<std::uint64_t>(replicate), tags::kIteration,
                                  static_cast<std::uint64_t>(k)});
}

std::vector<RMReplicate> rm_optimize(const eig::EIGEstimator& estimator, const RMRunOptions& options) {
  if (options.replicates < 1) throw std::invalid_argument("rm_optimize: need T >= 1");
  RMOptions rm = options.rm;
  if (rm.bounds.dimension() == 0) rm.bounds = estimator.design_bounds();
  rm.validate();

  std::vector<RMReplicate> runs(static_cast<std::size_t>(options.replicates));
  util::parallel_for(runs.size(), options.workers, [&](std::size_t slot) {
    auto& run = runs[slot];
    run.index = static_cast<int>(slot);
    const auto seeds = rm_seeds(options.seed, run.index);
    const auto start = std::chrono::steady_clock::now();
    try {
      auto engine = util::make_engine(seeds.start);
      const Eigen::VectorXd x0 = rm.bounds.sample_uniform(engine);
      run.trace = robbins_monro(
          [&](const Eigen::VectorXd& x, int k) {
            const auto samples =
                eig::draw_sample_set(estimator, rm_iteration_seed(options.seed, run.index, k));
            return eig::eig_gradient(estimator, x, samples).gradient;
          },
          x0, rm);
      run.final_value = eig::eig_value_fresh(estimator, run.trace.final_design(), seeds.final_value);
      run.trace.values.push_back(run.final_value);
      ++run.trace.n_objective_evals;
    } catch (const std::exception& e) {
      run.failed = true;
      run.error = e.what();
    }
    run.trace.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  });
  return runs;
}

}  // namespace boed::optim
