#include "commands.hpp"

#include "model_options.hpp"

#include "boed/eig/estimator.hpp"
#include "boed/harness/experiment.hpp"
#include "boed/harness/posterior.hpp"
#include "boed/harness/reports.hpp"
#include "boed/models/surrogate_model.hpp"
#include "boed/polychaos/serialization.hpp"
#include "boed/util/parallel.hpp"
#include "boed/util/rng.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>

namespace boed::cli {

using nlohmann::json;

namespace {

std::vector<double> to_vector(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

void print_json(const json& j) { fmt::print("{}\n", j.dump(2)); }

// Opens `path` for writing, or returns stdout's stream when path is empty or "-".
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw std::runtime_error(fmt::format("cannot write '{}'", path));
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

void check_design(const harness::Problem& problem, const Eigen::VectorXd& d) {
  if (d.size() != problem.bounds.dimension()) {
    throw CLI::ValidationError("--design", fmt::format("expected {} coordinates", problem.bounds.dimension()));
  }
}

}  // namespace

void add_surrogate_commands(CLI::App& app) {
  auto* group = app.add_subcommand("surrogate", "build or check the polynomial surrogate of the diffusion model");
  group->require_subcommand(1);

  struct BuildArgs {
    std::string model_config;
    std::string out;
    models::SurrogateBuildOptions options;
    std::string quadrature = "tensor";
  };
  auto build = std::make_shared<BuildArgs>();
  auto* b = group->add_subcommand("build", "project the diffusion model onto a total-order Legendre basis");
  b->add_option("--model-config", build->model_config, "diffusion parameters as JSON");
  b->add_option("--out", build->out, "expansion JSON to write")->required();
  b->add_option("--degree", build->options.degree, "total polynomial degree")->capture_default_str();
  b->add_option("--quadrature", build->quadrature, "tensor | smolyak")->capture_default_str();
  b->add_option("--level", build->options.level, "Clenshaw-Curtis level")->capture_default_str();
  b->add_flag("--log-space", build->options.log_space, "project the logarithm of the outputs");
  b->add_option("--workers", build->options.workers, "threads for model evaluations (0 = all)")->capture_default_str();
  b->callback([build] {
    if (build->quadrature == "smolyak") {
      build->options.quadrature = models::QuadratureKind::smolyak;
    } else if (build->quadrature != "tensor") {
      throw CLI::ValidationError("--quadrature", "expected tensor or smolyak");
    }
    build->options.workers = util::resolve_workers(build->options.workers);
    models::DiffusionConfig config;
    if (!build->model_config.empty()) config = load_diffusion_config(build->model_config);
    models::DiffusionForwardModel direct(config, 1u << 14);
    const auto start = std::chrono::steady_clock::now();
    auto expansion = models::build_diffusion_surrogate(direct, build->options);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    polychaos::save_expansion(expansion, build->out);
    print_json({{"path", build->out},
                {"terms", expansion.index_set().size()},
                {"degree", build->options.degree},
                {"pde_solves", direct.solves()},
                {"seconds", seconds}});
  });

  struct CheckArgs {
    std::string surrogate;
    std::string model_config;
    int samples = 2000;
    std::uint64_t seed = 0;
    int workers = 0;
  };
  auto check = std::make_shared<CheckArgs>();
  auto* c = group->add_subcommand("check", "relative L2 error against held-out direct solves");
  c->add_option("--surrogate", check->surrogate, "expansion JSON")->required();
  c->add_option("--model-config", check->model_config, "diffusion parameters as JSON");
  c->add_option("--samples", check->samples, "held-out (theta, d) pairs")->capture_default_str();
  c->add_option("--seed", check->seed)->capture_default_str();
  c->add_option("--workers", check->workers, "0 = all hardware threads")->capture_default_str();
  c->callback([check] {
    models::DiffusionConfig config;
    if (!check->model_config.empty()) config = load_diffusion_config(check->model_config);
    const models::SurrogateModel surrogate(polychaos::load_expansion(check->surrogate));
    const models::DiffusionForwardModel direct(config, 1);
    const auto err = models::surrogate_error(surrogate, direct, check->samples, check->seed,
                                             util::resolve_workers(check->workers));
    print_json({{"samples", err.samples},
                {"relative_l2", err.aggregate},
                {"relative_l2_per_output", to_vector(err.per_output)},
                {"max_abs_error", err.max_abs}});
  });
}

void add_eig_commands(CLI::App& app) {
  auto* group = app.add_subcommand("eig", "nested Monte Carlo expected information gain");
  group->require_subcommand(1);

  struct EvalArgs {
    ModelOptions model;
    std::string design;
    int n = 101;
    int m = 101;
    std::uint64_t seed = 0;
  };
  auto eval = std::make_shared<EvalArgs>();
  auto* e = group->add_subcommand("eval", "value and design gradient at one design");
  eval->model.add_to(*e);
  e->add_option("--design", eval->design, "comma-separated design, e.g. 0.5,0.5")->required();
  e->add_option("--n", eval->n, "outer samples")->capture_default_str();
  e->add_option("--m", eval->m, "inner samples")->capture_default_str();
  e->add_option("--seed", eval->seed)->capture_default_str();
  e->callback([eval] {
    const auto problem = harness::make_problem(eval->model.spec());
    const Eigen::VectorXd d = parse_point(eval->design, "--design");
    check_design(problem, d);
    const eig::EIGEstimator estimator(problem.model, problem.noise, problem.prior, eval->n, eval->m,
                                      problem.bounds);
    const auto samples = eig::draw_sample_set(estimator, eval->seed);
    const auto r = eig::eig_gradient(estimator, d, samples);
    print_json({{"value", r.value}, {"gradient", to_vector(r.gradient)}, {"n_model_evals", r.n_model_evals}});
  });

  struct SurfaceArgs {
    ModelOptions model;
    int grid = 21;
    int n = 101;
    int m = 101;
    std::uint64_t seed = 0;
    std::string out;
  };
  auto surface = std::make_shared<SurfaceArgs>();
  auto* s = group->add_subcommand("surface", "estimate over a K x K design grid (common random numbers)");
  surface->model.add_to(*s);
  s->add_option("--grid", surface->grid, "points per side")->capture_default_str();
  s->add_option("--n", surface->n, "outer samples")->capture_default_str();
  s->add_option("--m", surface->m, "inner samples")->capture_default_str();
  s->add_option("--seed", surface->seed)->capture_default_str();
  s->add_option("--out", surface->out, "CSV path (stdout when omitted)");
  s->callback([surface] {
    if (surface->grid < 2) throw CLI::ValidationError("--grid", "need at least 2 points per side");
    const auto problem = harness::make_problem(surface->model.spec());
    if (problem.bounds.dimension() != 2) throw CLI::ValidationError("--model", "surface needs a 2-D design");
    const eig::EIGEstimator estimator(problem.model, problem.noise, problem.prior, surface->n, surface->m,
                                      problem.bounds);
    const auto samples = eig::draw_sample_set(estimator, surface->seed);
    Output out(surface->out);
    out.stream() << "x,y,u_hat\n";
    const int k = surface->grid;
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) {
        Eigen::VectorXd d(2);
        for (int a = 0; a < 2; ++a) {
          const int step = a == 0 ? i : j;
          d[a] = problem.bounds.lower[a] +
                 (problem.bounds.upper[a] - problem.bounds.lower[a]) * static_cast<double>(step) / (k - 1);
        }
        out.stream() << fmt::format("{},{},{}\n", d[0], d[1], eig::eig_value(estimator, d, samples));
      }
    }
  });
}

void add_optimize_commands(CLI::App& app) {
  auto* group = app.add_subcommand("optimize", "stochastic design optimization");
  group->require_subcommand(1);

  struct RunArgs {
    ModelOptions model;
    harness::ExperimentConfig config;
    int n = 101;
    int m = 101;
    std::string csv = "runs.csv";
    std::string json_path = "summary.json";
    bool no_timing = false;
  };

  auto common = [](CLI::App* cmd, const std::shared_ptr<RunArgs>& args) {
    args->model.add_to(*cmd);
    cmd->add_option("--n", args->n, "outer samples")->capture_default_str();
    cmd->add_option("--m", args->m, "inner samples")->capture_default_str();
    cmd->add_option("--runs", args->config.replicates, "independent replicates T")->capture_default_str();
    cmd->add_option("--seed", args->config.seed, "master seed")->capture_default_str();
    cmd->add_option("--requality-n", args->config.requality_n, "outer samples of the re-estimate")
        ->capture_default_str();
    cmd->add_option("--requality-m", args->config.requality_m, "inner samples of the re-estimate")
        ->capture_default_str();
    cmd->add_option("--workers", args->config.workers, "0 = all hardware threads")->capture_default_str();
    cmd->add_option("--csv", args->csv, "run-level CSV")->capture_default_str();
    cmd->add_option("--json", args->json_path, "JSON summary")->capture_default_str();
    cmd->add_flag("--no-timing", args->no_timing, "report zero wall times");
  };

  auto run = [](const std::shared_ptr<RunArgs>& args, harness::Algorithm algorithm) {
    auto& config = args->config;
    config.algorithms = {algorithm};
    config.n_list = {args->n};
    config.m_list = {args->m};
    config.record_timing = !args->no_timing;
    config.model = args->model.spec();
    config.model.surrogate.workers = util::resolve_workers(config.workers);
    const auto problem = harness::make_problem(config.model);
    const auto result = harness::run_matrix(config, problem);
    harness::write_run_csv(result, args->csv);

    json summary;
    const auto& cell = result.cells.at(0);
    summary["algorithm"] = std::string(harness::to_string(algorithm));
    summary["N"] = args->n;
    summary["M"] = args->m;
    summary["runs"] = config.replicates;
    summary["completed"] = cell.completed;
    summary["failed"] = cell.failed;
    summary["mean_u_hat"] = cell.mean_u_hat;
    summary["mean_runtime_s"] = cell.mean_runtime_s;
    summary["U_ref"] = result.u_ref;
    summary["mse"] = cell.mse;
    int near_corner = 0;
    double mean_gap = 0.0;
    int gaps = 0;
    for (const auto& r : result.records) {
      if (r.failed) continue;
      const Eigen::ArrayXd to_lower = (r.design - problem.bounds.lower).array().abs();
      const Eigen::ArrayXd to_upper = (r.design - problem.bounds.upper).array().abs();
      if (to_lower.min(to_upper).maxCoeff() <= 0.1) ++near_corner;
      if (r.gap) {
        mean_gap += r.gap->gap;
        ++gaps;
      }
    }
    summary["corner_fraction"] = cell.completed ? static_cast<double>(near_corner) / cell.completed : 0.0;
    if (gaps) summary["mean_gap"] = mean_gap / gaps;
    summary["config"] = json::parse(harness::experiment_config_to_json(config));
    Output out(args->json_path);
    out.stream() << summary.dump(2) << '\n';
  };

  auto rm = std::make_shared<RunArgs>();
  auto* r = group->add_subcommand("rm", "Robbins-Monro with IPA gradients");
  common(r, rm);
  r->add_option("--beta", rm->config.rm.gain.beta, "gain a_k = beta / k")->capture_default_str();
  r->add_option("--max-iters", rm->config.rm.max_iters)->capture_default_str();
  r->add_option("--stall-tol", rm->config.rm.stall_tol)->capture_default_str();
  r->add_option("--stall-patience", rm->config.rm.stall_patience)->capture_default_str();
  r->callback([rm, run] { run(rm, harness::Algorithm::rm); });

  auto saa = std::make_shared<RunArgs>();
  auto* s = group->add_subcommand("saa", "sample average approximation with box-constrained BFGS");
  common(s, saa);
  s->add_option("--n-prime", saa->config.n_prime, "outer samples of the lower bound (0 = min(10 N, 1001))")
      ->capture_default_str();
  s->add_option("--grad-tol", saa->config.bfgs.grad_tol)->capture_default_str();
  s->add_option("--max-iters", saa->config.bfgs.max_iters)->capture_default_str();
  s->callback([saa, run] { run(saa, harness::Algorithm::saa); });
}

void add_model_commands(CLI::App& app) {
  auto* group = app.add_subcommand("model", "direct finite-difference diffusion solves");
  group->require_subcommand(1);

  struct SolveArgs {
    std::string model_config;
    std::string src;
    std::string sensor;
  };
  auto solve = std::make_shared<SolveArgs>();
  auto* s = group->add_subcommand("solve", "concentration at the sensor at the observation times");
  s->add_option("--model-config", solve->model_config, "diffusion parameters as JSON");
  s->add_option("--src", solve->src, "source location x,y")->required();
  s->add_option("--sensor", solve->sensor, "sensor location x,y")->required();
  s->callback([solve] {
    models::DiffusionConfig config;
    if (!solve->model_config.empty()) config = load_diffusion_config(solve->model_config);
    const models::DiffusionForwardModel model(config, 1);
    const auto values = model.value(parse_point(solve->src, "--src"), parse_point(solve->sensor, "--sensor"));
    print_json({{"times", config.obs_times}, {"values", to_vector(values)}});
  });

  struct FieldArgs {
    std::string model_config;
    std::string src;
    double time = 0.3;
    std::string out;
  };
  auto field = std::make_shared<FieldArgs>();
  auto* f = group->add_subcommand("field", "nodal field at one time as CSV");
  f->add_option("--model-config", field->model_config, "diffusion parameters as JSON");
  f->add_option("--src", field->src, "source location x,y")->required();
  f->add_option("--time", field->time, "multiple of dt in [0, t_final]")->capture_default_str();
  f->add_option("--out", field->out, "CSV path (stdout when omitted)");
  f->callback([field] {
    models::DiffusionConfig config;
    if (!field->model_config.empty()) config = load_diffusion_config(field->model_config);
    const models::DiffusionSolver solver(config);
    const Eigen::VectorXd src = parse_point(field->src, "--src");
    if (src.size() != 2) throw CLI::ValidationError("--src", "expected x,y");
    const std::vector<double> times{field->time};
    const auto solution = solver.solve(Eigen::Vector2d(src[0], src[1]), times);
    const auto& w = solution.nodal(0);
    const int n = config.grid_n;
    Output out(field->out);
    out.stream() << "x,y,w\n";
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        out.stream() << fmt::format("{},{},{}\n", i * solver.spacing(), j * solver.spacing(), w[i + n * j]);
      }
    }
  });
}

void add_experiment_commands(CLI::App& app) {
  auto* group = app.add_subcommand("experiment", "algorithm x N x M study");
  group->require_subcommand(1);

  struct MatrixArgs {
    std::string config;
    std::string out;
    int workers = -1;
  };
  auto matrix = std::make_shared<MatrixArgs>();
  auto* m = group->add_subcommand("matrix", "run every cell, re-estimate, and write reports");
  m->add_option("--config", matrix->config, "experiment JSON")->required();
  m->add_option("--out", matrix->out, "report directory")->required();
  m->add_option("--workers", matrix->workers, "override the config's worker count");
  m->callback([matrix] {
    auto config = harness::load_experiment_config(matrix->config);
    if (matrix->workers >= 0) config.workers = matrix->workers;
    config.model.surrogate.workers = util::resolve_workers(config.workers);
    const auto problem = harness::make_problem(config.model);
    const auto result = harness::run_matrix(config, problem);
    harness::emit_reports(result, matrix->out);
    print_json({{"out", matrix->out}, {"records", result.records.size()}, {"U_ref", result.u_ref}});
  });
}

void add_posterior_commands(CLI::App& app) {
  auto* group = app.add_subcommand("posterior", "posterior density of the source location");
  group->require_subcommand(1);

  struct MapArgs {
    ModelOptions model;
    std::string src;
    std::string sensor;
    int grid = 101;
    std::int64_t noise_seed = -1;
    std::string out;
  };
  auto map = std::make_shared<MapArgs>();
  auto* p = group->add_subcommand("map", "density on a K x K grid for data simulated at --src");
  map->model.add_to(*p);
  p->add_option("--src", map->src, "true source location x,y")->required();
  p->add_option("--sensor", map->sensor, "sensor location x,y")->required();
  p->add_option("--grid", map->grid, "points per side")->capture_default_str();
  p->add_option("--noise-seed", map->noise_seed, "add simulated noise drawn from this seed (noise-free if < 0)");
  p->add_option("--out", map->out, "CSV path (stdout when omitted)");
  p->callback([map] {
    const auto problem = harness::make_problem(map->model.spec());
    const Eigen::VectorXd src = parse_point(map->src, "--src");
    const Eigen::VectorXd sensor = parse_point(map->sensor, "--sensor");
    // Data come from the direct solver, the inversion from the configured model.
    models::DiffusionConfig config;
    if (!map->model.diffusion_config.empty()) config = load_diffusion_config(map->model.diffusion_config);
    const models::DiffusionForwardModel truth(config, 1);
    Eigen::VectorXd y = truth.value(src, sensor);
    if (map->noise_seed >= 0) {
      auto engine = util::make_engine(static_cast<std::uint64_t>(map->noise_seed));
      std::normal_distribution<double> gauss;
      const Eigen::VectorXd sigma = problem.noise.sigma(y);
      for (Eigen::Index c = 0; c < y.size(); ++c) y[c] += sigma[c] * gauss(engine);
    }
    const auto grid = harness::posterior_map(*problem.model, problem.noise, sensor, y, map->grid);
    Output out(map->out);
    out.stream() << "x,y,density\n";
    for (Eigen::Index i = 0; i < grid.x_nodes.size(); ++i) {
      for (Eigen::Index j = 0; j < grid.y_nodes.size(); ++j) {
        out.stream() << fmt::format("{},{},{}\n", grid.x_nodes[i], grid.y_nodes[j], grid.density(i, j));
      }
    }
  });
}

}  // namespace boed::cli
