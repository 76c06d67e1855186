#include "model_options.hpp"

#include <fmt/format.h>

#include <fstream>
#include <sstream>
#include <vector>

namespace boed::cli {

void ModelOptions::add_to(CLI::App& app) {
  app.add_option("--model", kind, "diffusion_surrogate | diffusion_direct | linear_gaussian | parameter_free")
      ->capture_default_str();
  app.add_option("--surrogate", surrogate, "expansion JSON; built in memory when omitted");
  app.add_option("--model-config", diffusion_config, "diffusion parameters as JSON {s, h, tau, grid_n, ...}");
  app.add_option("--noise-alpha", alpha, "noise floor")->capture_default_str();
  app.add_option("--noise-beta", beta, "signal-proportional noise")->capture_default_str();
  app.add_option("--prior-std", prior_std, "linear_gaussian prior standard deviation")->capture_default_str();
  app.add_option("--dimension", dimension, "linear_gaussian / parameter_free dimension")->capture_default_str();
}

harness::ModelSpec ModelOptions::spec() const {
  harness::ModelSpec s;
  s.kind = harness::model_kind_from_string(kind);
  s.surrogate_path = surrogate;
  if (!diffusion_config.empty()) s.diffusion = load_diffusion_config(diffusion_config);
  s.noise_alpha = alpha;
  s.noise_beta = beta;
  s.prior_std = prior_std;
  s.dimension = dimension;
  return s;
}

models::DiffusionConfig load_diffusion_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(fmt::format("cannot open model config '{}'", path));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return harness::parse_diffusion_config(buffer.str());
}

Eigen::VectorXd parse_point(const std::string& text, const char* what) {
  std::vector<double> values;
  std::stringstream in(text);
  std::string field;
  while (std::getline(in, field, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(field, &used));
      if (used != field.size()) throw std::invalid_argument(field);
    } catch (const std::exception&) {
      throw CLI::ValidationError(what, fmt::format("'{}' is not a comma-separated list of numbers", text));
    }
  }
  if (values.empty()) throw CLI::ValidationError(what, "empty coordinate list");
  return Eigen::Map<Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

}  // namespace boed::cli
