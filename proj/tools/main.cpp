#include "commands.hpp"

#include <fmt/format.h>

#include <cstdio>
#include <exception>

int main(int argc, char** argv) {
  CLI::App app{"Bayesian optimal experimental design: expected information gain estimation and "
               "stochastic design optimization"};
  app.require_subcommand(1);
  boed::cli::add_surrogate_commands(app);
  boed::cli::add_eig_commands(app);
  boed::cli::add_optimize_commands(app);
  boed::cli::add_model_commands(app);
  boed::cli::add_experiment_commands(app);
  boed::cli::add_posterior_commands(app);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  }
  return 0;
}
