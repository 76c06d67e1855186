#ifndef BOED_HARNESS_REPORTS_HPP
#define BOED_HARNESS_REPORTS_HPP

#include "boed/harness/experiment.hpp"

#include <filesystem>

namespace boed::harness {

/// Writes designs.csv, reestimates.csv, gaps.csv, iterations.csv,
/// mse_vs_time.csv and summary.json into `out_dir` (created if missing).
///
///   designs.csv      algorithm,N,M,t,x,y,termination,iters,wall_s
///   reestimates.csv  algorithm,N,M,t,u_hat
///   gaps.csv         N,M,t,upper,lower,gap,variance           (SAA rows)
///   iterations.csv   algorithm,N,M,t,iters,n_objective_evals,n_gradient_evals,final_objective
///   mse_vs_time.csv  algorithm,N,M,mean_runtime_s,mse
///
/// Failed replicates appear in designs.csv with termination "failed" and
/// empty coordinates. A one-dimensional design leaves y empty.
void emit_reports(const ExperimentMatrixResult& result, const std::filesystem::path& out_dir);

/// Rebuilds records, summaries and config from a directory written by
/// emit_reports().
ExperimentMatrixResult read_reports(const std::filesystem::path& out_dir);

/// One row per replicate of a single-cell run:
///   t,x,y,final_objective,u_hat,gap,variance,iters,wall_s,termination
void write_run_csv(const ExperimentMatrixResult& result, const std::filesystem::path& path);

}  // namespace boed::harness

#endif  // BOED_HARNESS_REPORTS_HPP
