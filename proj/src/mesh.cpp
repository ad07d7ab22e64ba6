#include "tgapod/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace tgapod {
namespace {

Vec3 sub(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

double signed_volume(const std::array<Vec3, 4>& x) {
  return dot(sub(x[1], x[0]), cross(sub(x[2], x[0]), sub(x[3], x[0]))) / 6.0;
}

// The 6 axis orderings; tetrahedron p walks from the cube origin to the far
// corner along e_{p[0]}, e_{p[1]}, e_{p[2]}.
constexpr std::array<std::array<int, 3>, 6> kKuhnPaths = {{
    {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0},
}};

void finalize_geometry(Tetrahedron& t) {
  double vol = signed_volume(t.corners);
  if (vol < 0.0) {
    std::swap(t.corners[2], t.corners[3]);
    std::swap(t.dofs[2], t.dofs[3]);
    vol = -vol;
  }
  t.volume = vol;

  // grad λ_i for i = 1..3 are the rows of J^{-1}, J = [x1-x0, x2-x0, x3-x0].
  const Vec3 e1 = sub(t.corners[1], t.corners[0]);
  const Vec3 e2 = sub(t.corners[2], t.corners[0]);
  const Vec3 e3 = sub(t.corners[3], t.corners[0]);
  const double det = dot(e1, cross(e2, e3));
  const Vec3 g1 = cross(e2, e3);
  const Vec3 g2 = cross(e3, e1);
  const Vec3 g3 = cross(e1, e2);
  for (int d = 0; d < 3; ++d) {
    t.gradients[1][d] = g1[d] / det;
    t.gradients[2][d] = g2[d] / det;
    t.gradients[3][d] = g3[d] / det;
    t.gradients[0][d] = -(t.gradients[1][d] + t.gradients[2][d] + t.gradients[3][d]);
  }
}

}  // namespace

Tetrahedron make_tetrahedron(const std::array<Vec3, 4>& corners, const std::array<std::size_t, 4>& dofs) {
  Tetrahedron t;
  t.corners = corners;
  t.dofs = dofs;
  if (signed_volume(corners) == 0.0) throw std::invalid_argument("make_tetrahedron: degenerate corners");
  finalize_geometry(t);
  return t;
}

Vec3 Tetrahedron::map_from_reference(double l1, double l2, double l3) const {
  const double l0 = 1.0 - l1 - l2 - l3;
  Vec3 p{};
  for (int d = 0; d < 3; ++d) {
    p[d] = l0 * corners[0][d] + l1 * corners[1][d] + l2 * corners[2][d] + l3 * corners[3][d];
  }
  return p;
}

std::array<double, 4> Tetrahedron::barycentric(const Vec3& p) const {
  const Vec3 r = sub(p, corners[0]);
  std::array<double, 4> l{};
  l[1] = dot(gradients[1], r);
  l[2] = dot(gradients[2], r);
  l[3] = dot(gradients[3], r);
  l[0] = 1.0 - l[1] - l[2] - l[3];
  return l;
}

double Tetrahedron::diameter() const {
  double d2 = 0.0;
  for (int a = 0; a < 4; ++a) {
    for (int b = a + 1; b < 4; ++b) {
      const Vec3 e = sub(corners[a], corners[b]);
      d2 = std::max(d2, dot(e, e));
    }
  }
  return std::sqrt(d2);
}

PeriodicMesh::PeriodicMesh(double length, std::size_t cells_per_axis)
    : length_(length), n_(cells_per_axis) {
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw std::invalid_argument("periodic mesh: edge length must be positive");
  }
  if (cells_per_axis < 2) {
    throw std::invalid_argument("periodic mesh: need at least 2 cells per axis");
  }
  const double spacing = length / static_cast<double>(n_);
  const long n = static_cast<long>(n_);

  vertices_.resize(n_ * n_ * n_);
  for (long k = 0; k < n; ++k) {
    for (long j = 0; j < n; ++j) {
      for (long i = 0; i < n; ++i) {
        vertices_[dof_index(i, j, k)] = {static_cast<double>(i) * spacing, static_cast<double>(j) * spacing,
                                         static_cast<double>(k) * spacing};
      }
    }
  }

  cells_.reserve(6 * n_ * n_ * n_);
  for (long k = 0; k < n; ++k) {
    for (long j = 0; j < n; ++j) {
      for (long i = 0; i < n; ++i) {
        for (const auto& path : kKuhnPaths) {
          Tetrahedron t;
          std::array<long, 3> ijk = {i, j, k};
          for (int v = 0; v < 4; ++v) {
            if (v > 0) ++ijk[path[v - 1]];
            t.dofs[v] = dof_index(ijk[0], ijk[1], ijk[2]);
            t.corners[v] = {static_cast<double>(ijk[0]) * spacing, static_cast<double>(ijk[1]) * spacing,
                            static_cast<double>(ijk[2]) * spacing};
          }
          finalize_geometry(t);
          h_ = std::max(h_, t.diameter());
          cells_.push_back(t);
        }
      }
    }
  }
}

std::size_t PeriodicMesh::dof_index(long i, long j, long k) const {
  const long n = static_cast<long>(n_);
  auto wrap = [n](long v) { return static_cast<std::size_t>(((v % n) + n) % n); };
  return wrap(i) + n_ * (wrap(j) + n_ * wrap(k));
}

std::optional<std::size_t> PeriodicMesh::locate(const Vec3& p, double tol) const {
  const double spacing = length_ / static_cast<double>(n_);
  Vec3 q{};
  std::array<std::size_t, 3> cube{};
  for (int d = 0; d < 3; ++d) {
    q[d] = std::fmod(p[d], length_);
    if (q[d] < 0.0) q[d] += length_;
    cube[d] = std::min(n_ - 1, static_cast<std::size_t>(q[d] / spacing));
  }
  const std::size_t first = 6 * (cube[0] + n_ * (cube[1] + n_ * cube[2]));
  for (std::size_t c = first; c < first + 6; ++c) {
    const auto l = cells_[c].barycentric(q);
    if (std::all_of(l.begin(), l.end(), [tol](double x) { return x >= -tol; })) return c;
  }
  return std::nullopt;
}

void write_mesh(std::ostream& os, const PeriodicMesh& mesh) {
  os.precision(17);
  for (const auto& v : mesh.vertices()) os << v[0] << ' ' << v[1] << ' ' << v[2] << '\n';
  for (const auto& c : mesh.cells()) {
    os << c.dofs[0] << ' ' << c.dofs[1] << ' ' << c.dofs[2] << ' ' << c.dofs[3] << '\n';
  }
}

}  // namespace tgapod
