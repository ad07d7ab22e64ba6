#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

namespace tgapod {

using Vec3 = std::array<double, 3>;

/// One linear tetrahedron of a periodic mesh.
///
/// `corners` are the unwrapped physical coordinates (they may touch x = L),
/// while `dofs` are the wrapped global indices in [0, n^3). Barycentric
/// gradients and the volume are cached at construction.
struct Tetrahedron {
  std::array<std::size_t, 4> dofs{};
  std::array<Vec3, 4> corners{};
  std::array<Vec3, 4> gradients{};
  double volume = 0.0;

  /// Physical point for barycentric coordinates (l1, l2, l3); l0 = 1 - l1 - l2 - l3.
  Vec3 map_from_reference(double l1, double l2, double l3) const;
  /// Barycentric coordinates of a physical point.
  std::array<double, 4> barycentric(const Vec3& p) const;
  double diameter() const;
};

/// Standalone cell from four corners. Negatively oriented input has corners
/// 2 and 3 (and their dofs) swapped.
Tetrahedron make_tetrahedron(const std::array<Vec3, 4>& corners, const std::array<std::size_t, 4>& dofs = {0, 1, 2, 3});

/// Structured periodic tetrahedral mesh of the cube [0, L)^3.
///
/// Each of the n^3 cube cells is split into 6 Kuhn tetrahedra sharing the
/// main diagonal. Opposite faces are identified purely through the DOF
/// numbering; no ghost vertices exist.
class PeriodicMesh {
 public:
  PeriodicMesh(double length, std::size_t cells_per_axis);

  double length() const { return length_; }
  std::size_t cells_per_axis() const { return n_; }
  std::size_t num_dofs() const { return vertices_.size(); }
  std::size_t num_cells() const { return cells_.size(); }
  double spacing() const { return length_ / static_cast<double>(n_); }
  /// Maximum cell diameter, (L/n)·sqrt(3) for this family.
  double h() const { return h_; }

  const Vec3& vertex(std::size_t dof) const { return vertices_[dof]; }
  const std::vector<Vec3>& vertices() const { return vertices_; }
  const Tetrahedron& cell(std::size_t c) const { return cells_[c]; }
  const std::vector<Tetrahedron>& cells() const { return cells_; }

  /// Global DOF of grid vertex (i, j, k); indices wrap modulo n.
  std::size_t dof_index(long i, long j, long k) const;

  /// Cell containing p (p is wrapped into [0, L)^3 first). Ties go to the
  /// lowest cell index among the candidates of the enclosing cube.
  std::optional<std::size_t> locate(const Vec3& p, double tol = 1e-12) const;

 private:
  double length_;
  std::size_t n_;
  double h_ = 0.0;
  std::vector<Vec3> vertices_;
  std::vector<Tetrahedron> cells_;
};

inline PeriodicMesh build_periodic_mesh(double length, std::size_t cells_per_axis) {
  return PeriodicMesh(length, cells_per_axis);
}

/// Debug dump: one "x y z" line per vertex, then one line of 4 DOF indices per cell.
void write_mesh(std::ostream& os, const PeriodicMesh& mesh);

}  // namespace tgapod
