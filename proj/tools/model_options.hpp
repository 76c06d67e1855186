#pragma once

#include "boed/harness/config.hpp"

#include <CLI11.hpp>
#include <Eigen/Dense>

#include <string>

namespace boed::cli {

// Flags shared by every subcommand that needs a forward model.
struct ModelOptions {
  std::string kind = "diffusion_surrogate";
  std::string surrogate;
  std::string diffusion_config;
  double alpha = 0.1;
  double beta = 0.1;
  double prior_std = 1.0;
  int dimension = 1;

  void add_to(CLI::App& app);
  harness::ModelSpec spec() const;
};

models::DiffusionConfig load_diffusion_config(const std::string& path);

/// "x,y" -> vector; throws CLI::ValidationError on malformed input.
Eigen::VectorXd parse_point(const std::string& text, const char* what);

}  // namespace boed::cli
