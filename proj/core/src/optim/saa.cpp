#include "boed/optim/saa.hpp"

#include "boed/util/parallel.hpp"
#include "boed/util/rng.hpp"
#include "seed_tags.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

namespace boed::optim {

int default_n_prime(int outer) { return std::max(outer + 1, std::min(10 * outer, 1001)); }

SAASeeds saa_seeds(std::uint64_t seed, int replicate) {
  const auto t = static_cast<std::uint64_t>(replicate);
  return {util::derive_seed(seed, {tags::kSaa, t, tags::kStart}),
          util::derive_seed(seed, {tags::kSaa, t, tags::kFrozen}),
          util::derive_seed(seed, {tags::kSaa, t, tags::kLower})};
}

namespace {

double sample_variance(const std::vector<double>& values) {
  if (values.size() < 2) return 0.0;
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return ss / static_cast<double>(values.size() - 1);
}

}  // namespace

SAAResult saa_optimize(const eig::EIGEstimator& estimator, const SAAOptions& options) {
  if (options.replicates < 1) throw std::invalid_argument("saa_optimize: need T >= 1");
  const int n_prime = options.n_prime > 0 ? options.n_prime : default_n_prime(estimator.outer());
  if (n_prime <= estimator.outer()) throw std::invalid_argument("saa_optimize: need N' > N");

  BFGSOptions bfgs = options.bfgs;
  if (bfgs.bounds.dimension() == 0) bfgs.bounds = estimator.design_bounds();
  const auto large = estimator.with_sizes(n_prime, estimator.inner());

  SAAResult result;
  result.n_prime = n_prime;
  result.replicates.resize(static_cast<std::size_t>(options.replicates));
  util::parallel_for(result.replicates.size(), options.workers, [&](std::size_t slot) {
    auto& rep = result.replicates[slot];
    rep.index = static_cast<int>(slot);
    const auto seeds = saa_seeds(options.seed, rep.index);
    const auto start = std::chrono::steady_clock::now();
    try {
      auto engine = util::make_engine(seeds.start);
      const Eigen::VectorXd x0 = bfgs.bounds.sample_uniform(engine);
      const auto frozen = eig::draw_sample_set(estimator, seeds.frozen);
      rep.trace = bfgs_maximize(
          [&](const Eigen::VectorXd& x) {
            const auto r = eig::eig_gradient(estimator, x, frozen);
            return ValueAndGradient{r.value, r.gradient};
          },
          x0, bfgs);
      rep.optimum = rep.trace.values.back();

      const auto terms = eig::eig_value_terms(large, rep.trace.final_design(),
                                              eig::draw_sample_set(large, seeds.lower));
      double sum = 0.0;
      for (double v : terms) sum += v;
      rep.lower = sum / static_cast<double>(terms.size());
      rep.lower_variance = sample_variance(terms) / static_cast<double>(terms.size());
    } catch (const std::exception& e) {
      rep.failed = true;
      rep.error = e.what();
    }
    rep.trace.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  });

  std::vector<double> optima;
  for (const auto& rep : result.replicates) {
    if (!rep.failed) optima.push_back(rep.optimum);
  }
  if (!optima.empty()) {
    double sum = 0.0;
    for (double v : optima) sum += v;
    result.upper = sum / static_cast<double>(optima.size());
    result.upper_variance = sample_variance(optima) / static_cast<double>(optima.size());
  }
  for (auto& rep : result.replicates) {
    if (rep.failed) continue;
    rep.gap.upper = result.upper;
    rep.gap.lower = rep.lower;
    rep.gap.gap = rep.gap.upper - rep.gap.lower;
    rep.gap.variance = result.upper_variance + rep.lower_variance;
  }
  return result;
}

}  // namespace boed::optim
