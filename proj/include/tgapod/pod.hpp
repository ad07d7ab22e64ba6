#pragma once

#include <iosfwd>

#include "tgapod/integrator.hpp"
#include "tgapod/snapshots.hpp"
#include "tgapod/sparse.hpp"

namespace tgapod {

/// Thin SVD U = left·diag(values)·rightᵀ truncated to the numerical rank.
struct ThinSvd {
  Matrix left;
  Vector values;
  Matrix right;
  std::size_t rank() const { return static_cast<std::size_t>(values.size()); }
};

/// Thin SVD via Householder QR followed by a Jacobi SVD of the triangular
/// factor. Singular values at or below max(rows, cols)·σ₁·1e-12 are dropped;
/// an all-zero input gives rank 0.
ThinSvd thin_svd(const Matrix& u);
ThinSvd thin_svd(const SnapshotMatrix& u);

/// Smallest m with σ₁ + … + σ_m > γ·(σ₁ + … + σ_r). Plain singular values,
/// not their squares; the comparison is strict. Empty input gives 0.
std::size_t select_mode_count(const Vector& singular_values, double gamma);

/// Column-orthonormal mode matrix with the singular values it was cut from.
struct PodBasis {
  Matrix modes;
  Vector singular_values;

  std::size_t size() const { return static_cast<std::size_t>(modes.cols()); }
  std::size_t dofs() const { return static_cast<std::size_t>(modes.rows()); }
};

/// Leading left singular vectors of the snapshots holding a γ share of Σσ.
PodBasis pod_mode(const SnapshotMatrix& snapshots, double gamma);
PodBasis pod_mode(const Matrix& snapshots, double gamma);

/// Basis update from new snapshots W₁: keep the first m₁ left singular
/// vectors of W₁ (by γ₂), append the old modes, and re-select by γ₃ from the
/// SVD of that concatenation.
PodBasis update_pod_mode(const SnapshotMatrix& new_snapshots, double gamma2, double gamma3, const PodBasis& old);
PodBasis update_pod_mode(const Matrix& new_snapshots, double gamma2, double gamma3, const PodBasis& old);

/// Projected operators Ã = R̃ᵀAR̃, b̃ = R̃ᵀb, C̃ = R̃ᵀCR̃.
struct ReducedSystem {
  Matrix a;
  Vector b;
  Matrix c;
};

ReducedSystem reduce_system(const SparseMatrix& a, const Vector& b, const SparseMatrix& c, const PodBasis& basis);

/// Solves Ã ũ^k = b̃ + C̃ ũ^{k−1} by full-pivoting LU; throws SolverError
/// when Ã is numerically singular.
Vector pod_step(const Vector& prev_reduced, const ReducedSystem& reduced);

/// R̃ᵀu.
Vector restrict_state(const PodBasis& basis, const Vector& u);
/// R̃ũ.
Vector lift_state(const PodBasis& basis, const Vector& reduced);

/// Galerkin reduction of one FemSystem onto one basis. The projected mass
/// and stiffness are cached; advection, reaction and load are projected at
/// every step.
class ReducedModel {
 public:
  ReducedModel(const FemSystem& system, PodBasis basis);

  const PodBasis& basis() const { return basis_; }
  std::size_t size() const { return basis_.size(); }

  ReducedSystem system_at(double t) const;
  /// ũ at t from ũ at t − δt.
  Vector step(const Vector& prev_reduced, double t) const;

 private:
  const FemSystem* system_;
  PodBasis basis_;
  Matrix mass_;
  Matrix stiffness_;
};

/// Header "n m", then the n·m mode entries column-major, one per line.
void write_basis(std::ostream& os, const PodBasis& basis);
PodBasis read_basis(std::istream& is);

}  // namespace tgapod
