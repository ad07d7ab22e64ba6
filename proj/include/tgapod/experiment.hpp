#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "tgapod/config.hpp"

namespace tgapod {

struct SummaryRow {
  std::string method;
  std::size_t dofs_full = 0;
  std::size_t dofs_reduced = 0;
  double avg_error = 0.0;
  std::size_t updates = 0;
  double wall_seconds = 0.0;
};

/// Problem named by the config, with the config's horizon.
ProblemSpec make_problem(const RunConfig& cfg);

/// Runs cfg.method against a fine FEM reference and writes
/// trace_<method>.csv (plus marked_<method>.txt and coarse_trace.csv for the
/// two-grid run) into cfg.out_dir, appending one row to summary.csv.
/// Everything except the wall-time column is reproducible byte for byte.
SummaryRow run_experiment(const RunConfig& cfg);

struct ConvergenceRow {
  std::size_t cells = 0;
  double dt = 0.0;
  /// L2 error against the manufactured solution.
  double error = 0.0;
  /// Temporal rows: L2 distance to the same-mesh small-step reference.
  double reference_error = 0.0;
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> spatial;
  std::vector<ConvergenceRow> temporal;
  double spatial_order = 0.0;
  double temporal_order = 0.0;
  /// Slope of the analytic error alone, which flattens once the spatial error dominates.
  double temporal_order_analytic = 0.0;
};

/// Least-squares slope of log(y) against log(x).
double fit_log_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Manufactured-solution convergence study. The velocity is the Kolmogorov
/// flow at cfg.eps. Spatial rows use converge.n with a small fixed step;
/// temporal rows use converge.time_n with each of converge.time_dt.
ConvergenceReport run_convergence(const RunConfig& cfg);
void write_convergence_csv(std::ostream& os, const ConvergenceReport& report);

/// One tg-apod (or cfg.method) run per sweep value, written to
/// out/<axis>_<index>/; all rows go to out/summary.csv.
std::vector<SummaryRow> run_sweep(const RunConfig& cfg);

void write_summary_header(std::ostream& os);
void write_summary_row(std::ostream& os, const SummaryRow& row);
/// Appends `row`, writing the header first when the file is new or empty.
void append_summary(const std::filesystem::path& path, const SummaryRow& row);

}  // namespace tgapod
