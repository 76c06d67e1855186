#include "boed/harness/config.hpp"
#include "boed/harness/experiment.hpp"
#include "boed/harness/reports.hpp"

#include <doctest.h>
#include <fmt/format.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace boed;
using namespace boed::harness;
namespace fs = std::filesystem;

namespace {

const std::vector<std::string> kFiles{"designs.csv", "reestimates.csv", "gaps.csv",
                                      "iterations.csv", "mse_vs_time.csv", "summary.json"};

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / fmt::format("boed_reports_{}_{}", name, ::getpid());
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const fs::path& p) {
  std::vector<std::string> out;
  std::ifstream in(p);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string cell; std::getline(ss, cell, ',');) out.push_back(cell);
  if (!s.empty() && s.back() == ',') out.emplace_back();
  return out;
}

ExperimentConfig small_config() {
  ExperimentConfig c;
  c.model.kind = ModelKind::linear_gaussian;
  c.n_list = {4, 9};
  c.m_list = {3};
  c.replicates = 3;
  c.requality_n = 30;
  c.requality_m = 30;
  c.seed = 5;
  c.workers = 1;
  c.record_timing = false;
  return c;
}

}  // namespace

TEST_CASE("empty result writes headers only") {
  ExperimentMatrixResult empty;
  empty.config = small_config();
  const auto dir = scratch("empty");
  emit_reports(empty, dir);
  for (const auto& f : kFiles) CHECK(fs::exists(dir / f));
  CHECK(lines(dir / "designs.csv") == std::vector<std::string>{"algorithm,N,M,t,x,y,termination,iters,wall_s"});
  CHECK(lines(dir / "reestimates.csv") == std::vector<std::string>{"algorithm,N,M,t,u_hat"});
  CHECK(lines(dir / "gaps.csv") == std::vector<std::string>{"N,M,t,upper,lower,gap,variance"});
  CHECK(lines(dir / "mse_vs_time.csv") == std::vector<std::string>{"algorithm,N,M,mean_runtime_s,mse"});
  CHECK(lines(dir / "iterations.csv").size() == 1);
  const auto back = read_reports(dir);
  CHECK(back.records.empty());
  CHECK(back.cells.empty());
  fs::remove_all(dir);
}

TEST_CASE("round trip through the report files") {
  auto config = small_config();
  config.record_timing = true;
  const auto result = run_matrix(config, make_problem(config.model));
  const auto dir = scratch("roundtrip");
  emit_reports(result, dir);
  const auto back = read_reports(dir);
  REQUIRE(back.records.size() == result.records.size());
  for (std::size_t k = 0; k < result.records.size(); ++k) {
    const auto& a = result.records[k];
    const auto& b = back.records[k];
    CHECK(a.algorithm == b.algorithm);
    CHECK(a.n == b.n);
    CHECK(a.m == b.m);
    CHECK(a.t == b.t);
    CHECK(a.design == b.design);
    CHECK(a.termination == b.termination);
    CHECK(a.iterations == b.iterations);
    CHECK(a.n_objective_evals == b.n_objective_evals);
    CHECK(a.n_gradient_evals == b.n_gradient_evals);
    CHECK(a.wall_s == b.wall_s);
    CHECK(a.final_objective == b.final_objective);
    CHECK(a.u_hat == b.u_hat);
    REQUIRE(a.gap.has_value() == b.gap.has_value());
    if (a.gap) {
      CHECK(a.gap->upper == b.gap->upper);
      CHECK(a.gap->lower == b.gap->lower);
      CHECK(a.gap->gap == b.gap->gap);
      CHECK(a.gap->variance == b.gap->variance);
    }
  }
  REQUIRE(back.cells.size() == result.cells.size());
  for (std::size_t c = 0; c < result.cells.size(); ++c) {
    CHECK(back.cells[c].mse == result.cells[c].mse);
    CHECK(back.cells[c].mean_runtime_s == result.cells[c].mean_runtime_s);
  }
  CHECK(back.u_ref == result.u_ref);
  CHECK(experiment_config_to_json(back.config) == experiment_config_to_json(result.config));
  fs::remove_all(dir);
}

TEST_CASE("gap column equals upper minus lower in every row") {
  const auto config = small_config();
  const auto result = run_matrix(config, make_problem(config.model));
  const auto dir = scratch("gaps");
  emit_reports(result, dir);
  const auto rows = lines(dir / "gaps.csv");
  CHECK(rows.size() == 1 + 2 * 3);
  for (std::size_t k = 1; k < rows.size(); ++k) {
    const auto cells = split(rows[k]);
    REQUIRE(cells.size() == 7);
    CHECK(std::stod(cells[5]) == std::stod(cells[3]) - std::stod(cells[4]));
  }
  const auto mse = lines(dir / "mse_vs_time.csv");
  CHECK(mse.size() == 1 + 4);
  fs::remove_all(dir);
}

TEST_CASE("report bytes do not depend on the worker count") {
  auto config = small_config();
  const auto problem = make_problem(config.model);
  const auto a = scratch("bytes1");
  const auto b = scratch("bytes3");
  emit_reports(run_matrix(config, problem), a);
  config.workers = 3;
  emit_reports(run_matrix(config, problem), b);
  for (const auto& f : kFiles) CHECK_MESSAGE(slurp(a / f) == slurp(b / f), f);
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("failed replicates and one-dimensional designs") {
  ExperimentMatrixResult r;
  r.config = small_config();
  ReplicateRecord ok;
  ok.algorithm = Algorithm::rm;
  ok.n = 4;
  ok.m = 3;
  ok.t = 0;
  ok.design = Eigen::VectorXd::Constant(1, 0.75);
  ok.termination = "max_iters";
  ok.iterations = 50;
  ok.u_hat = 0.4;
  ReplicateRecord bad = ok;
  bad.t = 1;
  bad.failed = true;
  bad.error = "boom";
  bad.design.resize(0);
  r.records = {ok, bad};
  summarize(r);
  const auto dir = scratch("failed");
  emit_reports(r, dir);
  const auto rows = lines(dir / "designs.csv");
  REQUIRE(rows.size() == 3);
  CHECK(split(rows[1])[4] == "0.75");
  CHECK(split(rows[1])[5].empty());
  const auto failed = split(rows[2]);
  CHECK(failed[4].empty());
  CHECK(failed[5].empty());
  CHECK(failed[6] == "failed");
  CHECK(r.cells.at(0).failed == 1);
  CHECK(r.cells.at(0).completed == 1);
  const auto back = read_reports(dir);
  REQUIRE(back.records.size() == 2);
  CHECK(back.records[1].failed);
  CHECK(back.records[0].design == ok.design);
  fs::remove_all(dir);
}

TEST_CASE("run csv and IO errors") {
  const auto config = small_config();
  auto result = run_matrix(config, make_problem(config.model));
  const auto dir = scratch("run");
  fs::create_directories(dir);
  write_run_csv(result, dir / "run.csv");
  const auto rows = lines(dir / "run.csv");
  CHECK(rows.at(0) == "t,x,y,final_objective,u_hat,gap,variance,iters,wall_s,termination");
  CHECK(rows.size() == 1 + result.records.size());
  // a regular file where the output directory should be
  std::ofstream(dir / "blocker") << "x";
  try {
    emit_reports(result, dir / "blocker" / "sub");
    FAIL("expected an IO error");
  } catch (const std::exception& e) {
    CHECK(std::string(e.what()).find("blocker") != std::string::npos);
  }
  fs::remove_all(dir);
}
