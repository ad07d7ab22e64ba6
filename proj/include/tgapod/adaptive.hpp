#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <vector>

#include "tgapod/integrator.hpp"
#include "tgapod/pod.hpp"

namespace tgapod {

/// Parameters shared by the POD drivers. Times must be integral multiples of dt.
struct AdaptiveParams {
  double gamma1 = 0.999;
  double gamma2 = 0.999;
  double gamma3 = 1.0 - 1e-8;
  double eta0 = 0.005;
  double warmup = 1.5;        // T₀
  double update_window = 1.0; // δT
  std::int64_t snapshot_stride = 5;  // δM, counted in steps of the grid being sampled
  double dt = 0.005;
  double horizon = 10.0;      // T

  void validate() const;
  std::int64_t total_steps() const;
  std::int64_t warmup_steps() const;
  std::int64_t window_steps() const;
};

/// Coarse space-time grid for the two-grid indicator.
struct TwoGridParams {
  std::size_t coarse_cells = 4;
  double coarse_dt = 0.05;

  /// Δt = M₁δt with integral M₁ ≥ 1, a strictly coarser mesh, and T₀, δT, T on the coarse time grid.
  void validate(const AdaptiveParams& fine, std::size_t fine_cells) const;
  std::int64_t time_ratio(const AdaptiveParams& fine) const;
};

/// Ordered set of marked update times, stored as coarse step indices.
class MarkedSet {
 public:
  MarkedSet() = default;
  explicit MarkedSet(double step_size) : step_size_(step_size) {}

  /// Inserts coarse step `step`; steps must arrive in increasing order.
  void insert(std::int64_t step);
  bool contains(std::int64_t step) const;
  /// Whether fine step `fine_step` lands on a marked coarse time, given Δt = ratio·δt.
  bool contains_fine(std::int64_t fine_step, std::int64_t ratio) const;

  bool empty() const { return steps_.empty(); }
  std::size_t size() const { return steps_.size(); }
  const std::vector<std::int64_t>& steps() const { return steps_; }
  double step_size() const { return step_size_; }
  std::vector<double> times() const;
  bool is_subset_of(const MarkedSet& other) const;

  bool operator==(const MarkedSet& other) const = default;

 private:
  double step_size_ = 0.0;
  std::vector<std::int64_t> steps_;
};

/// One row of an error trace. `indicator` and `error` are NaN where not computed.
struct TraceRecord {
  std::int64_t step = 0;
  double time = 0.0;
  double indicator = std::numeric_limits<double>::quiet_NaN();
  double error = std::numeric_limits<double>::quiet_NaN();
  bool marked = false;
  std::size_t modes = 0;
};

struct ErrorTrace {
  std::vector<TraceRecord> records;

  /// Mean of the defined errors over steps ≥ 1.
  double average_error() const;
};

/// CSV with header `step,time,indicator,error,marked,m`.
void write_trace_csv(std::ostream& os, const ErrorTrace& trace);
/// One time per line.
void write_marked_set(std::ostream& os, const MarkedSet& marked);

/// ‖A R̃ũ^k − b − C R̃ũ^{k−1}‖₂ / ‖b + C R̃ũ^{k−1}‖₂ with b = δt·(f, φ).
double residual_indicator(const SparseMatrix& a, const Vector& b, const SparseMatrix& c, const PodBasis& basis,
                          const Vector& reduced, const Vector& reduced_prev);

/// ‖u_H − u_{H,POD}‖₂ / ‖u_H‖₂ for the coarse FEM state and the lifted coarse POD state.
double coarse_indicator(const Vector& coarse_fem, const Vector& coarse_pod_lifted);

/// 1 when η > η₀ (strict).
inline bool mark(double eta, double eta0) { return eta > eta0; }

/// Marked set obtained by thresholding a stored coarse indicator trace: every
/// row with indicator > η₀ marks the coarse time one step before it.
MarkedSet marked_from_trace(const ErrorTrace& coarse_trace, double eta0, double coarse_dt);

struct RelativeErrors {
  std::vector<double> errors;
  double average = 0.0;
};

/// Per-step ‖u_h^k − u_*^k‖₂ / ‖u_h^k‖₂; the average runs over steps ≥ 1
/// (or over the single step when only one is given).
RelativeErrors relative_error_trace(const std::vector<Vector>& reference, const std::vector<Vector>& approx);
double relative_error(const Vector& reference, const Vector& approx);

struct DriverOptions {
  SolverConfig solver;
  /// Fine FEM states at steps 0..N; fills the error column when set.
  const std::vector<Vector>* reference = nullptr;
  /// Keep the lifted fine trajectory (and the coarse indicator inputs).
  bool keep_states = false;
};

struct DriverResult {
  ErrorTrace trace;
  MarkedSet marked;
  std::size_t updates = 0;
  std::size_t final_modes = 0;
  std::size_t max_modes = 0;
  /// Lifted states at steps 0..N when keep_states is set.
  std::vector<Vector> states;

  /// Two-grid only: one row per coarse indicator evaluation.
  ErrorTrace coarse_trace;
  /// Two-grid only, with keep_states: u_H and lifted u_{H,POD} behind each coarse row.
  std::vector<Vector> coarse_fem;
  std::vector<Vector> coarse_pod;
};

/// Reference FEM trajectory at steps 0..N.
std::vector<Vector> fem_trajectory(const ProblemSpec& problem, const PeriodicMesh& mesh, const AdaptiveParams& params,
                                   const SolverConfig& solver = {});

/// Standard POD: FEM on [0, T₀], one basis, reduced stepping to T.
DriverResult run_pod(const ProblemSpec& problem, const PeriodicMesh& mesh, const AdaptiveParams& params,
                     const DriverOptions& options = {});

/// Adaptive POD driven by the full-space residual indicator.
DriverResult run_apod_residual(const ProblemSpec& problem, const PeriodicMesh& mesh, const AdaptiveParams& params,
                               const DriverOptions& options = {});

/// Two-grid adaptive POD. A coarse space-time run decides the marked set;
/// the fine run refreshes its basis exactly at those times.
DriverResult run_tg_apod(const ProblemSpec& problem, const PeriodicMesh& fine_mesh, const PeriodicMesh& coarse_mesh,
                         const TwoGridParams& two_grid, const AdaptiveParams& params,
                         const DriverOptions& options = {});

/// Coarse phase alone: indicator trace and marked set on (mesh_H, Δt).
DriverResult run_coarse_indicator(const ProblemSpec& problem, const PeriodicMesh& coarse_mesh,
                                  const TwoGridParams& two_grid, const AdaptiveParams& params,
                                  const DriverOptions& options = {});

}  // namespace tgapod
