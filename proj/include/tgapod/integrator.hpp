#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "tgapod/assembly.hpp"
#include "tgapod/linear_solver.hpp"
#include "tgapod/problems.hpp"
#include "tgapod/snapshots.hpp"

namespace tgapod {

/// Coefficient vector u^k at time t_k = k·δt. The step index is the source of
/// truth for time; times are never accumulated.
struct StateVector {
  Vector coeffs;
  std::int64_t step = 0;
  double time = 0.0;
};

/// Implicit Euler discretization A^k u^k = b^k + C u^{k-1} of one problem on
/// one mesh with one step size, where A^k = M + δt·a(t_k; ·, ·),
/// b^k = δt·(f(t_k), φ) and C = M.
///
/// Mass and stiffness are assembled once; advection, reaction and load are
/// reassembled at every t_k.
class FemSystem {
 public:
  FemSystem(const PeriodicMesh& mesh, ProblemSpec problem, double dt, SolverConfig solver = {});

  const PeriodicMesh& mesh() const { return *mesh_; }
  const ProblemSpec& problem() const { return problem_; }
  const Assembler& assembler() const { return assembler_; }
  const SolverConfig& solver() const { return solver_; }
  std::size_t num_dofs() const { return mesh_->num_dofs(); }
  double dt() const { return dt_; }
  double time_at(std::int64_t step) const { return static_cast<double>(step) * dt_; }

  const SparseMatrix& mass() const { return mass_; }
  const SparseMatrix& stiffness() const { return stiffness_; }
  SparseMatrix advection(double t) const { return assembler_.advection(problem_.velocity, t); }
  SparseMatrix reaction(double t) const { return assembler_.reaction(problem_.reaction, t); }
  bool has_reaction() const { return static_cast<bool>(problem_.reaction); }

  /// A^k at t.
  SparseMatrix system_matrix(double t) const;
  /// b^k = δt·(f(t), φ).
  Vector load(double t) const;

  /// Interpolated initial condition at step 0.
  StateVector initial_state() const;
  StateVector make_state(Vector coeffs, std::int64_t step) const;

  /// Solves A(t) u = b(t) + M prev.
  Vector advance(const Vector& prev, double t) const;
  /// One implicit Euler step from prev to prev.step + 1.
  StateVector step(const StateVector& prev) const;

 private:
  const PeriodicMesh* mesh_;
  ProblemSpec problem_;
  double dt_;
  SolverConfig solver_;
  Assembler assembler_;
  SparseMatrix mass_;
  SparseMatrix stiffness_;
};

/// Single step without a prepared system; reassembles everything.
StateVector fem_step(const StateVector& prev, const ProblemSpec& problem, const PeriodicMesh& mesh, double dt,
                     const SolverConfig& cfg);

struct FemRun {
  SnapshotMatrix snapshots;
  StateVector final_state;
  /// Every state from the initial one to the final one, when requested.
  std::vector<Vector> trajectory;
};

/// Advances `num_steps` steps from init, taking a snapshot every `stride`
/// steps starting with init itself. `on_step` sees each new state.
FemRun run_fem(const FemSystem& system, const StateVector& init, std::int64_t num_steps, std::int64_t stride,
               bool keep_trajectory = false, const std::function<void(const StateVector&)>& on_step = {});

/// Interval form: [t_a, t_b] must hold an integral number of steps and t_a
/// must be init's time.
FemRun run_fem(const FemSystem& system, const StateVector& init, double t_a, double t_b, std::int64_t stride,
               bool keep_trajectory = false);

/// round(span / dt), rejecting spans that are not integral multiples within 1e-9 relative.
std::int64_t integral_steps(double span, double dt, const char* what);

}  // namespace tgapod
