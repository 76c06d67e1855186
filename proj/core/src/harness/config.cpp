#include "boed/harness/config.hpp"

#include "boed/models/linear_gaussian.hpp"
#include "boed/polychaos/serialization.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace boed::harness {

using nlohmann::json;

std::string_view to_string(Algorithm algorithm) {
  return algorithm == Algorithm::rm ? "rm" : "saa";
}

Algorithm algorithm_from_string(std::string_view name) {
  if (name == "rm") return Algorithm::rm;
  if (name == "saa") return Algorithm::saa;
  throw std::invalid_argument(fmt::format("unknown algorithm '{}' (expected rm or saa)", name));
}

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::diffusion_surrogate: return "diffusion_surrogate";
    case ModelKind::diffusion_direct: return "diffusion_direct";
    case ModelKind::linear_gaussian: return "linear_gaussian";
    case ModelKind::parameter_free: return "parameter_free";
  }
  return "?";
}

ModelKind model_kind_from_string(std::string_view name) {
  for (auto k : {ModelKind::diffusion_surrogate, ModelKind::diffusion_direct, ModelKind::linear_gaussian,
                 ModelKind::parameter_free}) {
    if (to_string(k) == name) return k;
  }
  throw std::invalid_argument(fmt::format("unknown model kind '{}'", name));
}

void ExperimentConfig::validate() const {
  auto positive = [](const std::vector<int>& v, const char* name) {
    if (v.empty()) throw std::invalid_argument(fmt::format("{} must not be empty", name));
    for (int x : v) {
      if (x < 1) throw std::invalid_argument(fmt::format("{} entries must be >= 1, got {}", name, x));
    }
  };
  if (algorithms.empty()) throw std::invalid_argument("algorithm list must not be empty");
  positive(n_list, "N_list");
  positive(m_list, "M_list");
  if (replicates < 1) throw std::invalid_argument("T must be >= 1");
  if (requality_n < 1 || requality_m < 1) throw std::invalid_argument("requality sizes must be >= 1");
  if (workers < 0) throw std::invalid_argument("workers must be >= 0");
  if (n_prime < 0) throw std::invalid_argument("n_prime must be >= 0");
  if (!(model.noise_alpha > 0.0) || !(model.noise_beta >= 0.0)) {
    throw std::invalid_argument("noise requires alpha > 0 and beta >= 0");
  }
}

Problem make_problem(const ModelSpec& spec) {
  std::shared_ptr<const models::ForwardModel> model;
  switch (spec.kind) {
    case ModelKind::diffusion_surrogate: {
      if (!spec.surrogate_path.empty()) {
        model = std::make_shared<models::SurrogateModel>(polychaos::load_expansion(spec.surrogate_path));
      } else {
        models::DiffusionForwardModel direct(spec.diffusion);
        model = std::make_shared<models::SurrogateModel>(models::build_diffusion_surrogate(direct, spec.surrogate));
      }
      break;
    }
    case ModelKind::diffusion_direct:
      model = std::make_shared<models::DiffusionForwardModel>(spec.diffusion);
      break;
    case ModelKind::linear_gaussian:
      model = std::make_shared<models::LinearGaussianModel>(spec.noise_alpha, spec.prior_std, spec.dimension);
      break;
    case ModelKind::parameter_free:
      model = std::make_shared<models::ParameterFreeModel>(spec.dimension, Eigen::VectorXd::Ones(1),
                                                           Eigen::MatrixXd::Ones(1, spec.dimension));
      break;
  }

  const int nd = model->design_dimension();
  DesignBounds bounds = DesignBounds::unit_box(nd);
  if (!spec.design_lower.empty() || !spec.design_upper.empty()) {
    if (static_cast<int>(spec.design_lower.size()) != nd || static_cast<int>(spec.design_upper.size()) != nd) {
      throw std::invalid_argument(fmt::format("design bounds must have {} entries", nd));
    }
    bounds = DesignBounds(Eigen::Map<const Eigen::VectorXd>(spec.design_lower.data(), nd),
                          Eigen::Map<const Eigen::VectorXd>(spec.design_upper.data(), nd));
  }

  // The linear-Gaussian oracle is only closed-form with constant noise and a normal prior.
  const bool gaussian = spec.kind == ModelKind::linear_gaussian;
  auto noise = eig::NoiseModel::uniform(model->output_dimension(), spec.noise_alpha,
                                        gaussian ? 0.0 : spec.noise_beta);
  auto prior = gaussian ? eig::PriorSpec::standard_normal(model->parameter_dimension(), spec.prior_std)
                        : eig::PriorSpec::unit_uniform(model->parameter_dimension());
  return Problem{std::move(model), std::move(noise), std::move(prior), std::move(bounds)};
}

namespace {

template <typename T>
void read(const json& j, const char* key, T& out) {
  if (auto it = j.find(key); it != j.end()) out = it->template get<T>();
}

void reject_unknown(const json& j, std::initializer_list<const char*> known, const char* where) {
  std::set<std::string> allowed(known.begin(), known.end());
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key())) {
      throw std::invalid_argument(fmt::format("unknown key '{}' in {}", it.key(), where));
    }
  }
}

void read_diffusion(const json& j, models::DiffusionConfig& c) {
  reject_unknown(j, {"s", "h", "tau", "grid_n", "t_final", "dt", "obs_times"}, "diffusion config");
  read(j, "s", c.source_strength);
  read(j, "h", c.source_width);
  read(j, "tau", c.shutoff_time);
  read(j, "grid_n", c.grid_n);
  read(j, "t_final", c.t_final);
  read(j, "dt", c.dt);
  read(j, "obs_times", c.obs_times);
  c.validate();
}

json diffusion_json(const models::DiffusionConfig& c) {
  return json{{"s", c.source_strength}, {"h", c.source_width}, {"tau", c.shutoff_time}, {"grid_n", c.grid_n},
              {"t_final", c.t_final},   {"dt", c.dt},           {"obs_times", c.obs_times}};
}

}  // namespace

models::DiffusionConfig parse_diffusion_config(const std::string& json_text) {
  models::DiffusionConfig c;
  read_diffusion(json::parse(json_text), c);
  return c;
}

ExperimentConfig parse_experiment_config(const std::string& json_text) {
  const json j = json::parse(json_text);
  reject_unknown(j,
                 {"algorithm", "N_list", "M_list", "T", "seed", "requality_N", "requality_M", "workers",
                  "record_timing", "rm", "bfgs", "saa", "model"},
                 "experiment config");
  ExperimentConfig c;
  if (auto it = j.find("algorithm"); it != j.end()) {
    c.algorithms.clear();
    if (it->is_string()) {
      c.algorithms.push_back(algorithm_from_string(it->get<std::string>()));
    } else {
      for (const auto& a : *it) c.algorithms.push_back(algorithm_from_string(a.get<std::string>()));
    }
  }
  read(j, "N_list", c.n_list);
  read(j, "M_list", c.m_list);
  read(j, "T", c.replicates);
  read(j, "seed", c.seed);
  read(j, "requality_N", c.requality_n);
  read(j, "requality_M", c.requality_m);
  read(j, "workers", c.workers);
  read(j, "record_timing", c.record_timing);

  if (auto it = j.find("rm"); it != j.end()) {
    reject_unknown(*it, {"beta", "max_iters", "stall_tol", "stall_patience"}, "rm");
    read(*it, "beta", c.rm.gain.beta);
    read(*it, "max_iters", c.rm.max_iters);
    read(*it, "stall_tol", c.rm.stall_tol);
    read(*it, "stall_patience", c.rm.stall_patience);
  }
  if (auto it = j.find("bfgs"); it != j.end()) {
    reject_unknown(*it, {"grad_tol", "max_iters", "position_tol", "value_tol", "initial_step", "contraction",
                         "armijo", "min_step"},
                   "bfgs");
    read(*it, "grad_tol", c.bfgs.grad_tol);
    read(*it, "max_iters", c.bfgs.max_iters);
    read(*it, "position_tol", c.bfgs.position_tol);
    read(*it, "value_tol", c.bfgs.value_tol);
    read(*it, "initial_step", c.bfgs.line_search.initial_step);
    read(*it, "contraction", c.bfgs.line_search.contraction);
    read(*it, "armijo", c.bfgs.line_search.armijo);
    read(*it, "min_step", c.bfgs.line_search.min_step);
  }
  if (auto it = j.find("saa"); it != j.end()) {
    reject_unknown(*it, {"n_prime"}, "saa");
    read(*it, "n_prime", c.n_prime);
  }
  if (auto it = j.find("model"); it != j.end()) {
    const json& m = *it;
    reject_unknown(m, {"kind", "surrogate_path", "diffusion", "surrogate", "alpha", "beta", "prior_std",
                       "dimension", "design_lower", "design_upper"},
                   "model");
    if (auto k = m.find("kind"); k != m.end()) c.model.kind = model_kind_from_string(k->get<std::string>());
    if (auto p = m.find("surrogate_path"); p != m.end()) c.model.surrogate_path = p->get<std::string>();
    if (auto d = m.find("diffusion"); d != m.end()) read_diffusion(*d, c.model.diffusion);
    if (auto s = m.find("surrogate"); s != m.end()) {
      reject_unknown(*s, {"degree", "quadrature", "level", "log_space"}, "surrogate");
      read(*s, "degree", c.model.surrogate.degree);
      read(*s, "level", c.model.surrogate.level);
      read(*s, "log_space", c.model.surrogate.log_space);
      if (auto q = s->find("quadrature"); q != s->end()) {
        const auto name = q->get<std::string>();
        if (name == "tensor") {
          c.model.surrogate.quadrature = models::QuadratureKind::tensor;
        } else if (name == "smolyak") {
          c.model.surrogate.quadrature = models::QuadratureKind::smolyak;
        } else {
          throw std::invalid_argument(fmt::format("unknown quadrature '{}'", name));
        }
      }
    }
    read(m, "alpha", c.model.noise_alpha);
    read(m, "beta", c.model.noise_beta);
    read(m, "prior_std", c.model.prior_std);
    read(m, "dimension", c.model.dimension);
    read(m, "design_lower", c.model.design_lower);
    read(m, "design_upper", c.model.design_upper);
  }
  c.validate();
  return c;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(fmt::format("cannot open config '{}'", path.string()));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_experiment_config(buffer.str());
}

std::string experiment_config_to_json(const ExperimentConfig& c) {
  json algorithms = json::array();
  for (auto a : c.algorithms) algorithms.push_back(std::string(to_string(a)));
  json model{{"kind", std::string(to_string(c.model.kind))},
             {"surrogate_path", c.model.surrogate_path.string()},
             {"diffusion", diffusion_json(c.model.diffusion)},
             {"surrogate",
              {{"degree", c.model.surrogate.degree},
               {"quadrature", c.model.surrogate.quadrature == models::QuadratureKind::tensor ? "tensor" : "smolyak"},
               {"level", c.model.surrogate.level},
               {"log_space", c.model.surrogate.log_space}}},
             {"alpha", c.model.noise_alpha},
             {"beta", c.model.noise_beta},
             {"prior_std", c.model.prior_std},
             {"dimension", c.model.dimension},
             {"design_lower", c.model.design_lower},
             {"design_upper", c.model.design_upper}};
  json j{{"algorithm", algorithms},
         {"N_list", c.n_list},
         {"M_list", c.m_list},
         {"T", c.replicates},
         {"seed", c.seed},
         {"requality_N", c.requality_n},
         {"requality_M", c.requality_m},
         {"record_timing", c.record_timing},
         {"rm",
          {{"beta", c.rm.gain.beta},
           {"max_iters", c.rm.max_iters},
           {"stall_tol", c.rm.stall_tol},
           {"stall_patience", c.rm.stall_patience}}},
         {"bfgs",
          {{"grad_tol", c.bfgs.grad_tol},
           {"max_iters", c.bfgs.max_iters},
           {"position_tol", c.bfgs.position_tol},
           {"value_tol", c.bfgs.value_tol},
           {"initial_step", c.bfgs.line_search.initial_step},
           {"contraction", c.bfgs.line_search.contraction},
           {"armijo", c.bfgs.line_search.armijo},
           {"min_step", c.bfgs.line_search.min_step}}},
         {"saa", {{"n_prime", c.n_prime}}},
         {"model", model}};
  return j.dump(2);
}

}  // namespace boed::harness
