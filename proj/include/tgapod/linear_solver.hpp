#pragma once

#include <stdexcept>
#include <string>

#include "tgapod/sparse.hpp"

namespace tgapod {

enum class SolverMethod { Krylov, Direct };

struct SolverConfig {
  SolverMethod method = SolverMethod::Krylov;
  double rel_tol = 1e-10;
  int max_iter = 2000;
  int restart = 50;
  /// Systems up to this size retry with the direct solver when GMRES stalls.
  std::size_t direct_fallback_max_dofs = 4096;

  void validate() const;
};

/// Raised when a linear solve cannot reach the requested tolerance.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double residual) : std::runtime_error(what), residual_(residual) {}
  /// Relative residual ‖Ax - b‖ / ‖b‖ at the point of failure.
  double residual() const { return residual_; }

 private:
  double residual_;
};

struct SolveStats {
  int iterations = 0;
  double relative_residual = 0.0;
  bool used_direct = false;
};

/// Solves A x = rhs so that ‖A x − rhs‖₂ ≤ rel_tol·‖rhs‖₂.
///
/// Krylov path: restarted GMRES with right Jacobi preconditioning, so the
/// monitored residual is the true residual of the unpreconditioned system.
/// `guess` seeds the iteration when its size matches.
Vector solve_linear(const SparseMatrix& a, const Vector& rhs, const SolverConfig& cfg, const Vector* guess = nullptr,
                    SolveStats* stats = nullptr);

}  // namespace tgapod
