#pragma once

#include <array>
#include <functional>
#include <vector>

#include "tgapod/mesh.hpp"
#include "tgapod/sparse.hpp"

namespace tgapod {

/// Scalar coefficient c(x, t) or forcing f(x, t). An empty function means zero.
using ScalarField = std::function<double(const Vec3&, double)>;
/// Velocity B(x, t). An empty function means zero.
using VectorField = std::function<Vec3(const Vec3&, double)>;

using LocalMatrix = std::array<std::array<double, 4>, 4>;
using LocalVector = std::array<double, 4>;

/// Exact P1 mass matrix, (V/20)·(1 + δij).
LocalMatrix local_mass(const Tetrahedron& cell);
/// Exact P1 stiffness matrix, V·∇λi·∇λj.
LocalMatrix local_stiffness(const Tetrahedron& cell);
/// ∫ (B·∇λj) λi with the 4-point degree-2 rule; row i is the test function.
LocalMatrix local_advection(const Tetrahedron& cell, const VectorField& velocity, double t);
/// ∫ c λj λi with the 4-point degree-2 rule.
LocalMatrix local_reaction(const Tetrahedron& cell, const ScalarField& coeff, double t);
/// ∫ f λi with the 4-point degree-2 rule.
LocalVector local_load(const Tetrahedron& cell, const ScalarField& forcing, double t);

/// Global P1 assembly over a periodic mesh.
///
/// The sparsity pattern and the per-cell scatter map are built once; every
/// assembled matrix shares that pattern. Contributions are accumulated in cell
/// order, so results are bitwise reproducible.
class Assembler {
 public:
  explicit Assembler(const PeriodicMesh& mesh);

  const PeriodicMesh& mesh() const { return *mesh_; }
  std::size_t num_dofs() const { return mesh_->num_dofs(); }

  SparseMatrix mass() const;
  /// Diffusion term (∇u, ∇v). The boundary flux integral of the weak form
  /// cancels between identified periodic faces and is not assembled.
  SparseMatrix stiffness() const;
  SparseMatrix advection(const VectorField& velocity, double t) const;
  SparseMatrix reaction(const ScalarField& coeff, double t) const;
  /// Unscaled load vector (f, φi).
  Vector load(const ScalarField& forcing, double t) const;
  /// Matrix with the shared pattern and all values zero.
  SparseMatrix zero() const { return pattern_; }

 private:
  template <class LocalFn>
  SparseMatrix assemble(LocalFn&& local) const;

  const PeriodicMesh* mesh_;
  SparseMatrix pattern_;
  std::vector<std::array<std::size_t, 16>> scatter_;
};

SparseMatrix assemble_mass(const PeriodicMesh& mesh);
SparseMatrix assemble_stiffness(const PeriodicMesh& mesh);
SparseMatrix assemble_advection(const PeriodicMesh& mesh, const VectorField& velocity, double t);
SparseMatrix assemble_reaction(const PeriodicMesh& mesh, const ScalarField& coeff, double t);
Vector assemble_load(const PeriodicMesh& mesh, const ScalarField& forcing, double t);

/// A = M + dt·(eps·K + N + R).
SparseMatrix compose_system(const SparseMatrix& mass, const SparseMatrix& stiffness, const SparseMatrix& advection,
                            const SparseMatrix& reaction, double diffusivity, double dt);

/// Nodal interpolant of fn(·, t).
Vector interpolate(const PeriodicMesh& mesh, const ScalarField& fn, double t);

/// ‖u_h - exact(·, t)‖_{L2(Ω)} with a collapsed Gauss rule of q points per axis.
double l2_error(const PeriodicMesh& mesh, const Vector& coeffs, const ScalarField& exact, double t, int q = 4);
/// ‖exact(·, t)‖_{L2(Ω)}.
double l2_norm(const PeriodicMesh& mesh, const ScalarField& exact, double t, int q = 4);

}  // namespace tgapod
