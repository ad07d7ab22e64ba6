#include "tgapod/adaptive.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <string>

namespace tgapod {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10e", v);
  return buf;
}

enum class UpdatePolicy { Never, Residual, MarkedTimes };

// Shared fine-grid loop: FEM warm-up on [0, T₀], POD basis, then reduced
// stepping to T. An update replaces the reduced steps of [t, t + δT] by FEM
// steps started from the current state, refreshes the basis from every δM-th
// new FEM state (the first one included) and re-enters the reduced loop by
// projection.
DriverResult fine_loop(const FemSystem& system, const AdaptiveParams& p, const DriverOptions& opts,
                       UpdatePolicy policy, const MarkedSet* marked, std::int64_t ratio) {
  const std::int64_t total = p.total_steps();
  const std::int64_t warmup = p.warmup_steps();
  const std::int64_t window = p.window_steps();

  DriverResult out;
  out.marked = marked ? *marked : MarkedSet(system.dt());

  std::size_t current_modes = 0;
  auto record = [&](std::int64_t step, const Vector& u, double eta) {
    TraceRecord r;
    r.step = step;
    r.time = system.time_at(step);
    r.indicator = eta;
    r.modes = current_modes;
    if (opts.reference) r.error = relative_error((*opts.reference).at(static_cast<std::size_t>(step)), u);
    out.trace.records.push_back(r);
    if (opts.keep_states) out.states.push_back(u);
  };

  const StateVector init = system.initial_state();
  record(0, init.coeffs, kNaN);
  const FemRun warm = run_fem(system, init, warmup, p.snapshot_stride, false,
                              [&](const StateVector& s) { record(s.step, s.coeffs, kNaN); });

  auto model = std::make_unique<ReducedModel>(system, pod_mode(warm.snapshots, p.gamma1));
  current_modes = model->size();
  out.max_modes = current_modes;
  Vector current = warm.final_state.coeffs;
  Vector reduced = restrict_state(model->basis(), current);

  std::int64_t k = warmup;
  while (k < total) {
    bool update = policy == UpdatePolicy::MarkedTimes && marked->contains_fine(k, ratio);
    double trigger = kNaN;
    if (!update) {
      const double t = system.time_at(k + 1);
      Vector next = model->step(reduced, t);
      double eta = kNaN;
      if (policy == UpdatePolicy::Residual) {
        eta = residual_indicator(system.system_matrix(t), system.load(t), system.mass(), model->basis(), next,
                                 reduced);
        if (mark(eta, p.eta0)) {
          update = true;
          trigger = eta;
        }
      }
      if (!update) {
        reduced = std::move(next);
        current = lift_state(model->basis(), reduced);
        ++k;
        record(k, current, eta);
        continue;
      }
    }

    // step back to t_k and refresh the basis over [t_k, t_k + δT]
    out.trace.records.back().marked = true;
    if (policy == UpdatePolicy::Residual) out.marked.insert(k);
    const std::int64_t len = std::min(window, total - k);
    bool first = true;
    SnapshotMatrix fresh;
    const FemRun win = run_fem(system, system.make_state(current, k), len, len, false, [&](const StateVector& s) {
      record(s.step, s.coeffs, first ? trigger : kNaN);
      first = false;
      if ((s.step - k - 1) % p.snapshot_stride == 0) fresh.append(s.coeffs, s.time);
    });
    model = std::make_unique<ReducedModel>(system, update_pod_mode(fresh, p.gamma2, p.gamma3, model->basis()));
    current_modes = model->size();
    out.max_modes = std::max(out.max_modes, current_modes);
    current = win.final_state.coeffs;
    reduced = restrict_state(model->basis(), current);
    k += len;
    ++out.updates;
  }
  out.final_modes = current_modes;
  return out;
}

}  // namespace

void AdaptiveParams::validate() const {
  for (auto [g, name] : {std::pair{gamma1, "gamma1"}, std::pair{gamma2, "gamma2"}, std::pair{gamma3, "gamma3"}}) {
    if (!(g > 0.0 && g < 1.0)) throw std::invalid_argument(std::string(name) + " must lie in (0, 1)");
  }
  if (!(eta0 > 0.0)) throw std::invalid_argument("eta0 must be positive");
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (!(warmup > 0.0)) throw std::invalid_argument("warm-up horizon T0 must be positive");
  if (!(update_window > 0.0)) throw std::invalid_argument("update window dT must be positive");
  if (snapshot_stride < 1) throw std::invalid_argument("snapshot stride dM must be at least 1");
  if (!(horizon > warmup)) throw std::invalid_argument("horizon T must exceed the warm-up horizon T0");
  total_steps();
  warmup_steps();
  window_steps();
}

std::int64_t AdaptiveParams::total_steps() const { return integral_steps(horizon, dt, "horizon T"); }
std::int64_t AdaptiveParams::warmup_steps() const { return integral_steps(warmup, dt, "warm-up horizon T0"); }
std::int64_t AdaptiveParams::window_steps() const { return integral_steps(update_window, dt, "update window dT"); }

std::int64_t TwoGridParams::time_ratio(const AdaptiveParams& fine) const {
  return integral_steps(coarse_dt, fine.dt, "coarse step");
}

void TwoGridParams::validate(const AdaptiveParams& fine, std::size_t fine_cells) const {
  if (!(coarse_dt > 0.0)) throw std::invalid_argument("coarse step must be positive");
  if (time_ratio(fine) < 1) throw std::invalid_argument("coarse step must be at least the fine step");
  if (coarse_cells < 2) throw std::invalid_argument("coarse mesh needs at least 2 cells per axis");
  if (coarse_cells >= fine_cells) throw std::invalid_argument("coarse mesh must be strictly coarser than the fine mesh");
  integral_steps(fine.warmup, coarse_dt, "warm-up horizon T0 on the coarse step");
  integral_steps(fine.update_window, coarse_dt, "update window dT on the coarse step");
  integral_steps(fine.horizon, coarse_dt, "horizon T on the coarse step");
}

void MarkedSet::insert(std::int64_t step) {
  if (!steps_.empty() && step <= steps_.back()) {
    throw std::invalid_argument("marked set: times must be strictly increasing");
  }
  steps_.push_back(step);
}

bool MarkedSet::contains(std::int64_t step) const { return std::binary_search(steps_.begin(), steps_.end(), step); }

bool MarkedSet::contains_fine(std::int64_t fine_step, std::int64_t ratio) const {
  return fine_step % ratio == 0 && contains(fine_step / ratio);
}

std::vector<double> MarkedSet::times() const {
  std::vector<double> t;
  t.reserve(steps_.size());
  for (auto s : steps_) t.push_back(static_cast<double>(s) * step_size_);
  return t;
}

bool MarkedSet::is_subset_of(const MarkedSet& other) const {
  return std::includes(other.steps_.begin(), other.steps_.end(), steps_.begin(), steps_.end());
}

double ErrorTrace::average_error() const {
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& r : records) {
    if (r.step >= 1 && !std::isnan(r.error)) {
      sum += r.error;
      ++count;
    }
  }
  return count ? sum / static_cast<double>(count) : 0.0;
}

void write_trace_csv(std::ostream& os, const ErrorTrace& trace) {
  os << "step,time,indicator,error,marked,m\n";
  for (const auto& r : trace.records) {
    os << r.step << ',' << format_double(r.time) << ',' << format_double(r.indicator) << ','
       << format_double(r.error) << ',' << (r.marked ? 1 : 0) << ',' << r.modes << '\n';
  }
}

void write_marked_set(std::ostream& os, const MarkedSet& marked) {
  for (double t : marked.times()) os << format_double(t) << '\n';
}

double residual_indicator(const SparseMatrix& a, const Vector& b, const SparseMatrix& c, const PodBasis& basis,
                          const Vector& reduced, const Vector& reduced_prev) {
  const Vector rhs = b + c * lift_state(basis, reduced_prev);
  const double denom = rhs.norm();
  if (denom == 0.0) throw std::domain_error("residual_indicator: zero right-hand side (degenerate step)");
  return (a * lift_state(basis, reduced) - rhs).norm() / denom;
}

double coarse_indicator(const Vector& coarse_fem, const Vector& coarse_pod_lifted) {
  if (coarse_fem.size() != coarse_pod_lifted.size()) throw std::invalid_argument("coarse_indicator: size mismatch");
  const double denom = coarse_fem.norm();
  if (denom == 0.0) throw std::domain_error("coarse_indicator: zero coarse reference state");
  return (coarse_fem - coarse_pod_lifted).norm() / denom;
}

MarkedSet marked_from_trace(const ErrorTrace& coarse_trace, double eta0, double coarse_dt) {
  MarkedSet out(coarse_dt);
  for (const auto& r : coarse_trace.records) {
    if (!std::isnan(r.indicator) && mark(r.indicator, eta0)) out.insert(r.step - 1);
  }
  return out;
}

double relative_error(const Vector& reference, const Vector& approx) {
  if (reference.size() != approx.size()) throw std::invalid_argument("relative_error: size mismatch");
  const double diff = (reference - approx).norm();
  const double denom = reference.norm();
  if (denom == 0.0) return diff == 0.0 ? 0.0 : kNaN;
  return diff / denom;
}

RelativeErrors relative_error_trace(const std::vector<Vector>& reference, const std::vector<Vector>& approx) {
  if (reference.size() != approx.size()) throw std::invalid_argument("relative_error_trace: trajectory lengths differ");
  RelativeErrors out;
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t k = 0; k < reference.size(); ++k) {
    out.errors.push_back(relative_error(reference[k], approx[k]));
    if ((k >= 1 || reference.size() == 1) && !std::isnan(out.errors.back())) {
      sum += out.errors.back();
      ++count;
    }
  }
  out.average = count ? sum / static_cast<double>(count) : 0.0;
  return out;
}

std::vector<Vector> fem_trajectory(const ProblemSpec& problem, const PeriodicMesh& mesh, const AdaptiveParams& params,
                                   const SolverConfig& solver) {
  params.validate();
  const FemSystem system(mesh, problem, params.dt, solver);
  return run_fem(system, system.initial_state(), params.total_steps(), 1, true).trajectory;
}

DriverResult run_pod(const ProblemSpec& problem, const PeriodicMesh& mesh, const AdaptiveParams& params,
                     const DriverOptions& options) {
  params.validate();
  const FemSystem system(mesh, problem, params.dt, options.solver);
  return fine_loop(system, params, options, UpdatePolicy::Never, nullptr, 1);
}

DriverResult run_apod_residual(const ProblemSpec& problem, const PeriodicMesh& mesh, const AdaptiveParams& params,
                               const DriverOptions& options) {
  params.validate();
  const FemSystem system(mesh, problem, params.dt, options.solver);
  return fine_loop(system, params, options, UpdatePolicy::Residual, nullptr, 1);
}

DriverResult run_coarse_indicator(const ProblemSpec& problem, const PeriodicMesh& coarse_mesh,
                                  const TwoGridParams& two_grid, const AdaptiveParams& params,
                                  const DriverOptions& options) {
  AdaptiveParams cp = params;
  cp.dt = two_grid.coarse_dt;
  cp.validate();
  const FemSystem coarse(coarse_mesh, problem, cp.dt, options.solver);
  const std::int64_t total = cp.total_steps();
  const std::int64_t window = cp.window_steps();

  DriverResult out;
  out.marked = MarkedSet(cp.dt);

  const FemRun warm = run_fem(coarse, coarse.initial_state(), cp.warmup_steps(), cp.snapshot_stride);
  auto model = std::make_unique<ReducedModel>(coarse, pod_mode(warm.snapshots, cp.gamma1));
  out.max_modes = model->size();
  StateVector fem = warm.final_state;
  Vector reduced = restrict_state(model->basis(), fem.coeffs);

  std::int64_t k = fem.step;
  while (k < total) {
    StateVector fem_next = coarse.step(fem);
    Vector next = model->step(reduced, fem_next.time);
    Vector lifted = lift_state(model->basis(), next);

    TraceRecord r;
    r.step = fem_next.step;
    r.time = fem_next.time;
    r.indicator = coarse_indicator(fem_next.coeffs, lifted);
    r.modes = model->size();
    r.marked = mark(r.indicator, cp.eta0);
    out.coarse_trace.records.push_back(r);
    if (options.keep_states) {
      out.coarse_fem.push_back(fem_next.coeffs);
      out.coarse_pod.push_back(lifted);
    }

    if (!r.marked) {
      fem = std::move(fem_next);
      reduced = std::move(next);
      ++k;
      continue;
    }

    // step back: t_k enters the marked set and the coarse basis is refreshed over [t_k, t_k + δT]
    out.marked.insert(k);
    const std::int64_t len = std::min(window, total - k);
    SnapshotMatrix fresh;
    const FemRun win = run_fem(coarse, fem, len, len, false, [&](const StateVector& s) {
      if ((s.step - k - 1) % cp.snapshot_stride == 0) fresh.append(s.coeffs, s.time);
    });
    model = std::make_unique<ReducedModel>(coarse, update_pod_mode(fresh, cp.gamma2, cp.gamma3, model->basis()));
    out.max_modes = std::max(out.max_modes, model->size());
    fem = win.final_state;
    reduced = restrict_state(model->basis(), fem.coeffs);
    k += len;
    ++out.updates;
  }
  out.final_modes = model->size();
  return out;
}

DriverResult run_tg_apod(const ProblemSpec& problem, const PeriodicMesh& fine_mesh, const PeriodicMesh& coarse_mesh,
                         const TwoGridParams& two_grid, const AdaptiveParams& params, const DriverOptions& options) {
  params.validate();
  two_grid.validate(params, fine_mesh.cells_per_axis());
  if (std::abs(coarse_mesh.length() - fine_mesh.length()) > 1e-12 * fine_mesh.length() ||
      coarse_mesh.cells_per_axis() != two_grid.coarse_cells) {
    throw std::invalid_argument("run_tg_apod: coarse mesh does not match the two-grid parameters");
  }

  DriverResult coarse = run_coarse_indicator(problem, coarse_mesh, two_grid, params, options);

  const FemSystem fine(fine_mesh, problem, params.dt, options.solver);
  DriverResult out =
      fine_loop(fine, params, options, UpdatePolicy::MarkedTimes, &coarse.marked, two_grid.time_ratio(params));
  out.coarse_trace = std::move(coarse.coarse_trace);
  out.coarse_fem = std::move(coarse.coarse_fem);
  out.coarse_pod = std::move(coarse.coarse_pod);
  return out;
}

}  // namespace tgapod
