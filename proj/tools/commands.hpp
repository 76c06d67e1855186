#pragma once

#include <CLI11.hpp>

namespace boed::cli {

void add_surrogate_commands(CLI::App& app);
void add_eig_commands(CLI::App& app);
void add_optimize_commands(CLI::App& app);
void add_model_commands(CLI::App& app);
void add_experiment_commands(CLI::App& app);
void add_posterior_commands(CLI::App& app);

}  // namespace boed::cli
