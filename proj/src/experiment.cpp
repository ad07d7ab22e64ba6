#include "tgapod/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "tgapod/adaptive.hpp"
#include "tgapod/integrator.hpp"

namespace tgapod {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::ofstream open_output(const std::filesystem::path& path, std::ios::openmode mode = std::ios::out) {
  std::ofstream os(path, mode);
  if (!os) throw std::runtime_error("cannot write '" + path.string() + "'");
  return os;
}

void prepare_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw ConfigError("run.out: cannot create output directory '" + dir.string() + "'");
  }
}

SummaryRow run_method(const RunConfig& cfg, const ProblemSpec& problem, const PeriodicMesh& fine,
                      const std::vector<Vector>& reference, double reference_seconds,
                      const std::filesystem::path& dir, const std::string& label) {
  const std::string tag = method_name(cfg.method);
  SummaryRow row;
  row.method = label;
  row.dofs_full = fine.num_dofs();

  if (cfg.method == Method::Fem) {
    ErrorTrace trace;
    for (std::size_t k = 0; k < reference.size(); ++k) {
      TraceRecord r;
      r.step = static_cast<std::int64_t>(k);
      r.time = static_cast<double>(k) * cfg.adaptive.dt;
      r.error = 0.0;
      r.modes = fine.num_dofs();
      trace.records.push_back(r);
    }
    auto os = open_output(dir / ("trace_" + tag + ".csv"));
    write_trace_csv(os, trace);
    row.dofs_reduced = fine.num_dofs();
    row.avg_error = 0.0;
    row.wall_seconds = reference_seconds;
    return row;
  }

  DriverOptions opts;
  opts.solver = cfg.solver;
  opts.reference = &reference;
  const auto start = Clock::now();
  DriverResult result;
  if (cfg.method == Method::Pod) {
    result = run_pod(problem, fine, cfg.adaptive, opts);
  } else if (cfg.method == Method::ApodResidual) {
    result = run_apod_residual(problem, fine, cfg.adaptive, opts);
  } else {
    const PeriodicMesh coarse(problem.length, cfg.coarse_n);
    result = run_tg_apod(problem, fine, coarse, cfg.two_grid(), cfg.adaptive, opts);
  }
  row.wall_seconds = seconds_since(start);

  {
    auto os = open_output(dir / ("trace_" + tag + ".csv"));
    write_trace_csv(os, result.trace);
  }
  if (cfg.method == Method::TgApod) {
    auto marked = open_output(dir / ("marked_" + tag + ".txt"));
    write_marked_set(marked, result.marked);
    auto coarse = open_output(dir / "coarse_trace.csv");
    write_trace_csv(coarse, result.coarse_trace);
  }
  row.dofs_reduced = result.final_modes;
  row.avg_error = result.trace.average_error();
  row.updates = result.updates;
  return row;
}

double mass_norm(const SparseMatrix& mass, const Vector& v) { return std::sqrt(std::max(0.0, v.dot(mass * v))); }

Vector final_coeffs(const FemSystem& system, std::int64_t steps) {
  return run_fem(system, system.initial_state(), steps, std::max<std::int64_t>(steps, 1)).final_state.coeffs;
}

}  // namespace

ProblemSpec make_problem(const RunConfig& cfg) {
  ProblemSpec p;
  if (cfg.problem == "kolmogorov") {
    p = kolmogorov_problem(cfg.eps);
  } else if (cfg.problem == "abc") {
    p = abc_problem(cfg.eps, cfg.w);
  } else if (cfg.problem == "manufactured") {
    p = manufactured_problem(cfg.eps, kolmogorov_problem(cfg.eps).velocity).problem;
  } else {
    throw ConfigError("problem.name: unknown problem '" + cfg.problem + "'");
  }
  p.horizon = cfg.adaptive.horizon;
  return p;
}

void write_summary_header(std::ostream& os) { os << "method,dofs_full,dofs_reduced,avg_error,updates,wall_seconds\n"; }

void write_summary_row(std::ostream& os, const SummaryRow& row) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%s,%zu,%zu,%.10e,%zu,%.3f\n", row.method.c_str(), row.dofs_full, row.dofs_reduced,
                row.avg_error, row.updates, row.wall_seconds);
  os << buf;
}

void append_summary(const std::filesystem::path& path, const SummaryRow& row) {
  std::error_code ec;
  const bool fresh = !std::filesystem::exists(path, ec) || std::filesystem::file_size(path, ec) == 0;
  auto os = open_output(path, std::ios::app);
  if (fresh) write_summary_header(os);
  write_summary_row(os, row);
}

SummaryRow run_experiment(const RunConfig& cfg) {
  cfg.validate();
  prepare_dir(cfg.out_dir);
  const ProblemSpec problem = make_problem(cfg);
  const PeriodicMesh fine(problem.length, cfg.fine_n);

  const auto start = Clock::now();
  const auto reference = fem_trajectory(problem, fine, cfg.adaptive, cfg.solver);
  const double reference_seconds = seconds_since(start);

  const SummaryRow row =
      run_method(cfg, problem, fine, reference, reference_seconds, cfg.out_dir, method_name(cfg.method));
  append_summary(cfg.out_dir / "summary.csv", row);
  return row;
}

double fit_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit_log_slope: need two or more points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0 && y[i] > 0.0)) throw std::invalid_argument("fit_log_slope: values must be positive");
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_log_slope: abscissae coincide");
  return sxy / sxx;
}

ConvergenceReport run_convergence(const RunConfig& cfg) {
  cfg.validate();
  const auto mms = manufactured_problem(cfg.eps, kolmogorov_problem(cfg.eps).velocity);
  const double length = mms.problem.length;
  ConvergenceReport report;

  {
    ProblemSpec p = mms.problem;
    p.horizon = cfg.converge_T;
    const auto steps = integral_steps(cfg.converge_T, cfg.converge_dt, "converge.T");
    std::vector<double> hs, errs;
    for (std::size_t n : cfg.converge_n) {
      const PeriodicMesh mesh(length, n);
      const FemSystem system(mesh, p, cfg.converge_dt, cfg.solver);
      const Vector u = final_coeffs(system, steps);
      ConvergenceRow row{n, cfg.converge_dt, l2_error(mesh, u, mms.exact, cfg.converge_T), 0.0};
      report.spatial.push_back(row);
      hs.push_back(mesh.h());
      errs.push_back(row.error);
    }
    if (hs.size() >= 2) report.spatial_order = fit_log_slope(hs, errs);
  }

  if (!cfg.converge_time_dt.empty()) {
    ProblemSpec p = mms.problem;
    p.horizon = cfg.converge_time_T;
    const PeriodicMesh mesh(length, cfg.converge_time_n);
    const double smallest = *std::min_element(cfg.converge_time_dt.begin(), cfg.converge_time_dt.end());
    const double ref_dt = smallest / 16.0;
    const FemSystem ref_system(mesh, p, ref_dt, cfg.solver);
    const Vector ref = final_coeffs(ref_system, integral_steps(cfg.converge_time_T, ref_dt, "converge.time_T"));
    const SparseMatrix& mass = ref_system.mass();

    std::vector<double> dts, errs, analytic;
    for (double dt : cfg.converge_time_dt) {
      const FemSystem system(mesh, p, dt, cfg.solver);
      const Vector u = final_coeffs(system, integral_steps(cfg.converge_time_T, dt, "converge.time_T"));
      ConvergenceRow row{cfg.converge_time_n, dt, l2_error(mesh, u, mms.exact, cfg.converge_time_T),
                         mass_norm(mass, u - ref)};
      report.temporal.push_back(row);
      dts.push_back(dt);
      errs.push_back(row.reference_error);
      analytic.push_back(row.error);
    }
    if (dts.size() >= 2) {
      report.temporal_order = fit_log_slope(dts, errs);
      report.temporal_order_analytic = fit_log_slope(dts, analytic);
    }
  }
  return report;
}

void write_convergence_csv(std::ostream& os, const ConvergenceReport& report) {
  char buf[256];
  os << "kind,n,dt,l2_error,reference_error\n";
  for (const auto& r : report.spatial) {
    std::snprintf(buf, sizeof buf, "space,%zu,%.6g,%.10e,\n", r.cells, r.dt, r.error);
    os << buf;
  }
  for (const auto& r : report.temporal) {
    std::snprintf(buf, sizeof buf, "time,%zu,%.6g,%.10e,%.10e\n", r.cells, r.dt, r.error, r.reference_error);
    os << buf;
  }
  std::snprintf(buf, sizeof buf, "# spatial order %.4f, temporal order %.4f (analytic %.4f)\n", report.spatial_order,
                report.temporal_order, report.temporal_order_analytic);
  os << buf;
}

std::vector<SummaryRow> run_sweep(const RunConfig& cfg) {
  cfg.validate();
  if (cfg.sweep_values.empty()) throw ConfigError("sweep.values: no values given");
  prepare_dir(cfg.out_dir);
  const ProblemSpec problem = make_problem(cfg);
  const PeriodicMesh fine(problem.length, cfg.fine_n);
  const auto start = Clock::now();
  const auto reference = fem_trajectory(problem, fine, cfg.adaptive, cfg.solver);
  const double reference_seconds = seconds_since(start);

  std::vector<SummaryRow> rows;
  for (std::size_t i = 0; i < cfg.sweep_values.size(); ++i) {
    const double v = cfg.sweep_values[i];
    RunConfig run = cfg;
    switch (cfg.sweep_axis) {
      case SweepAxis::Gamma3: run.adaptive.gamma3 = v; break;
      case SweepAxis::Gamma12: run.adaptive.gamma1 = run.adaptive.gamma2 = v; break;
      case SweepAxis::CoarseN: run.coarse_n = static_cast<std::size_t>(v); break;
    }
    run.validate();
    char label[128];
    std::snprintf(label, sizeof label, "%s[%s=%.10g]", method_name(run.method), sweep_axis_name(cfg.sweep_axis), v);
    const auto dir = cfg.out_dir / (std::string(sweep_axis_name(cfg.sweep_axis)) + "_" + std::to_string(i));
    prepare_dir(dir);
    const SummaryRow row = run_method(run, problem, fine, reference, reference_seconds, dir, label);
    append_summary(cfg.out_dir / "summary.csv", row);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace tgapod
