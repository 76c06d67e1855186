#include "boed/harness/config.hpp"
#include "boed/harness/experiment.hpp"
#include "boed/optim/rm_driver.hpp"
#include "boed/optim/saa.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

using namespace boed;
using namespace boed::harness;

namespace {

ExperimentConfig small_config(ModelKind kind) {
  ExperimentConfig c;
  c.model.kind = kind;
  c.n_list = {5, 12};
  c.m_list = {4};
  c.replicates = 3;
  c.requality_n = 40;
  c.requality_m = 40;
  c.seed = 17;
  c.workers = 1;
  c.record_timing = false;
  return c;
}

// population variance plus squared bias, a second route to the same number
double mse_by_decomposition(const std::vector<double>& u, double ref) {
  double mean = 0.0;
  for (double x : u) mean += x;
  mean /= static_cast<double>(u.size());
  double var = 0.0;
  for (double x : u) var += (x - mean) * (x - mean);
  var /= static_cast<double>(u.size());
  return var + (mean - ref) * (mean - ref);
}

}  // namespace

TEST_CASE("mse of a cell") {
  const std::vector<double> same{0.7, 0.7, 0.7};
  CHECK(mse_of_cell(same, 0.7) == 0.0);
  const std::vector<double> pair{2.0 - 1.0, 2.0 + 1.0};
  CHECK(mse_of_cell(pair, 2.0) == 1.0);
  CHECK_THROWS(mse_of_cell(std::vector<double>{}, 1.0));

  std::mt19937_64 rng(6);
  std::normal_distribution<double> g(0.5, 0.2);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> u(static_cast<std::size_t>(3 + trial));
    for (auto& x : u) x = g(rng);
    const double ref = 1.0;
    CHECK(mse_of_cell(u, ref) == doctest::Approx(mse_by_decomposition(u, ref)).epsilon(1e-12));
  }
}

TEST_CASE("single replicate of a theta-free model") {
  auto config = small_config(ModelKind::parameter_free);
  config.algorithms = {Algorithm::rm};
  config.n_list = {4};
  config.m_list = {3};
  config.replicates = 1;
  const auto result = run_matrix(config, make_problem(config.model));
  REQUIRE(result.records.size() == 1);
  CHECK_FALSE(result.records[0].failed);
  CHECK(result.records[0].u_hat == 0.0);
  REQUIRE(result.cells.size() == 1);
  CHECK(result.cells[0].mse == 0.0);
  CHECK(result.u_ref == 0.0);
}

TEST_CASE("matrix layout and reference value") {
  const auto config = small_config(ModelKind::linear_gaussian);
  const auto result = run_matrix(config, make_problem(config.model));
  CHECK(result.records.size() == 2 * 2 * 1 * 3);
  CHECK(result.cells.size() == 4);
  double best = -1e300;
  for (const auto& r : result.records) {
    CHECK_FALSE(r.failed);
    CHECK(r.wall_s == 0.0);
    CHECK(DesignBounds::unit_box(1).contains(r.design));
    best = std::max(best, r.u_hat);
    CHECK(r.gap.has_value() == (r.algorithm == Algorithm::saa));
  }
  CHECK(result.u_ref == best);
  for (const auto& cell : result.cells) {
    CHECK(cell.completed == 3);
    std::vector<double> u;
    for (const auto& r : result.records) {
      if (r.algorithm == cell.algorithm && r.n == cell.n && r.m == cell.m) u.push_back(r.u_hat);
    }
    CHECK(cell.mse == doctest::Approx(mse_by_decomposition(u, best)).epsilon(1e-12));
  }
}

TEST_CASE("re-estimates use randomness no optimizer touches") {
  const auto config = small_config(ModelKind::linear_gaussian);
  std::set<std::uint64_t> optimization;
  for (auto algorithm : config.algorithms) {
    for (int n : config.n_list) {
      for (int m : config.m_list) {
        const auto root = cell_seed(config.seed, algorithm, n, m);
        optimization.insert(root);
        for (int t = 0; t < config.replicates; ++t) {
          const auto rm = optim::rm_seeds(root, t);
          optimization.insert(rm.start);
          optimization.insert(rm.final_value);
          for (int k = 1; k <= config.rm.max_iters; ++k) optimization.insert(optim::rm_iteration_seed(root, t, k));
          const auto saa = optim::saa_seeds(root, t);
          optimization.insert(saa.start);
          optimization.insert(saa.frozen);
          optimization.insert(saa.lower);
        }
      }
    }
  }
  std::set<std::uint64_t> reestimate;
  for (auto algorithm : config.algorithms) {
    for (int n : config.n_list) {
      for (int m : config.m_list) {
        for (int t = 0; t < config.replicates; ++t) {
          const auto s = reestimate_seed(config.seed, algorithm, n, m, t);
          CHECK(optimization.count(s) == 0);
          reestimate.insert(s);
        }
      }
    }
  }
  CHECK(reestimate.size() == 2 * 2 * 1 * 3);
}

TEST_CASE("results do not depend on the worker count") {
  auto config = small_config(ModelKind::linear_gaussian);
  const auto problem = make_problem(config.model);
  const auto a = run_matrix(config, problem);
  config.workers = 3;
  const auto b = run_matrix(config, problem);
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t k = 0; k < a.records.size(); ++k) {
    CHECK(a.records[k].design == b.records[k].design);
    CHECK(a.records[k].u_hat == b.records[k].u_hat);
    CHECK(a.records[k].final_objective == b.records[k].final_objective);
    CHECK(a.records[k].iterations == b.records[k].iterations);
  }
  CHECK(a.u_ref == b.u_ref);
}

TEST_CASE("config validation") {
  ExperimentConfig c;
  c.n_list = {};
  CHECK_THROWS(c.validate());
  c = ExperimentConfig{};
  c.m_list = {0};
  CHECK_THROWS(c.validate());
  c = ExperimentConfig{};
  c.replicates = 0;
  CHECK_THROWS(c.validate());
  CHECK_THROWS(parse_experiment_config(R"({"N_list": [1], "bogus": 3})"));
  const auto parsed = parse_experiment_config(R"({"algorithm": "saa", "N_list": [3], "M_list": [5], "T": 2, "seed": 9})");
  CHECK(parsed.algorithms == std::vector<Algorithm>{Algorithm::saa});
  CHECK(parsed.replicates == 2);
  CHECK(parsed.requality_n == 1001);
  const auto again = parse_experiment_config(experiment_config_to_json(parsed));
  CHECK(experiment_config_to_json(again) == experiment_config_to_json(parsed));
}

TEST_CASE("solution quality improves with sample sizes on the diffusion benchmark") {
  ExperimentConfig config;
  config.n_list = {1, 101};
  config.m_list = {2, 101};
  config.replicates = 10;
  config.requality_n = 201;
  config.requality_m = 201;
  config.seed = 3;
  config.record_timing = false;
  const auto result = run_matrix(config, make_problem(config.model));
  for (auto algorithm : config.algorithms) {
    double small = -1.0, large = -1.0;
    for (const auto& cell : result.cells) {
      if (cell.algorithm != algorithm) continue;
      if (cell.n == 1 && cell.m == 2) small = cell.mse;
      if (cell.n == 101 && cell.m == 101) large = cell.mse;
    }
    MESSAGE(to_string(algorithm) << " mse (1,2) " << small << " (101,101) " << large);
    CHECK(large < small);
  }
}
