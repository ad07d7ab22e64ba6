#include "tgapod/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

#include "tgapod/quadrature.hpp"

namespace tgapod {
namespace {

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

std::array<double, 4> full_bary(const QuadraturePoint& qp) {
  return {1.0 - qp.bary[0] - qp.bary[1] - qp.bary[2], qp.bary[0], qp.bary[1], qp.bary[2]};
}

}  // namespace

LocalMatrix local_mass(const Tetrahedron& cell) {
  LocalMatrix m{};
  const double s = cell.volume / 20.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) m[i][j] = i == j ? 2.0 * s : s;
  }
  return m;
}

LocalMatrix local_stiffness(const Tetrahedron& cell) {
  LocalMatrix k{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) k[i][j] = cell.volume * dot(cell.gradients[i], cell.gradients[j]);
  }
  return k;
}

LocalMatrix local_advection(const Tetrahedron& cell, const VectorField& velocity, double t) {
  LocalMatrix n{};
  if (!velocity) return n;
  for (const auto& qp : tet_rule_degree2()) {
    const auto lam = full_bary(qp);
    const Vec3 b = velocity(cell.map_from_reference(qp.bary[0], qp.bary[1], qp.bary[2]), t);
    const double w = qp.weight * cell.volume;
    std::array<double, 4> b_dot_grad{};
    for (int j = 0; j < 4; ++j) b_dot_grad[j] = dot(b, cell.gradients[j]);
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) n[i][j] += w * lam[i] * b_dot_grad[j];
    }
  }
  return n;
}

LocalMatrix local_reaction(const Tetrahedron& cell, const ScalarField& coeff, double t) {
  LocalMatrix r{};
  if (!coeff) return r;
  for (const auto& qp : tet_rule_degree2()) {
    const auto lam = full_bary(qp);
    const double w = qp.weight * cell.volume * coeff(cell.map_from_reference(qp.bary[0], qp.bary[1], qp.bary[2]), t);
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) r[i][j] += w * lam[i] * lam[j];
    }
  }
  return r;
}

LocalVector local_load(const Tetrahedron& cell, const ScalarField& forcing, double t) {
  LocalVector b{};
  if (!forcing) return b;
  for (const auto& qp : tet_rule_degree2()) {
    const auto lam = full_bary(qp);
    const double w = qp.weight * cell.volume * forcing(cell.map_from_reference(qp.bary[0], qp.bary[1], qp.bary[2]), t);
    for (int i = 0; i < 4; ++i) b[i] += w * lam[i];
  }
  return b;
}

Assembler::Assembler(const PeriodicMesh& mesh) : mesh_(&mesh) {
  const std::size_t n = mesh.num_dofs();
  std::vector<std::tuple<std::size_t, std::size_t, double>> triplets;
  triplets.reserve(16 * mesh.num_cells());
  for (const auto& cell : mesh.cells()) {
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) triplets.emplace_back(cell.dofs[i], cell.dofs[j], 0.0);
    }
  }
  pattern_ = SparseMatrix::from_triplets(n, n, triplets);

  scatter_.resize(mesh.num_cells());
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    const auto& cell = mesh.cell(c);
    for (int i = 0; i < 4; ++i) {
      const std::size_t row = cell.dofs[i];
      const auto first = pattern_.col_idx().begin() + static_cast<std::ptrdiff_t>(pattern_.row_ptr()[row]);
      const auto last = pattern_.col_idx().begin() + static_cast<std::ptrdiff_t>(pattern_.row_ptr()[row + 1]);
      for (int j = 0; j < 4; ++j) {
        const auto it = std::lower_bound(first, last, cell.dofs[j]);
        scatter_[c][static_cast<std::size_t>(4 * i + j)] = static_cast<std::size_t>(it - pattern_.col_idx().begin());
      }
    }
  }
}

template <class LocalFn>
SparseMatrix Assembler::assemble(LocalFn&& local) const {
  SparseMatrix out = pattern_;
  auto& values = out.values();
  for (std::size_t c = 0; c < mesh_->num_cells(); ++c) {
    const LocalMatrix m = local(mesh_->cell(c));
    const auto& map = scatter_[c];
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) values[map[static_cast<std::size_t>(4 * i + j)]] += m[i][j];
    }
  }
  return out;
}

SparseMatrix Assembler::mass() const {
  return assemble([](const Tetrahedron& c) { return local_mass(c); });
}

SparseMatrix Assembler::stiffness() const {
  return assemble([](const Tetrahedron& c) { return local_stiffness(c); });
}

SparseMatrix Assembler::advection(const VectorField& velocity, double t) const {
  if (!velocity) return pattern_;
  return assemble([&](const Tetrahedron& c) { return local_advection(c, velocity, t); });
}

SparseMatrix Assembler::reaction(const ScalarField& coeff, double t) const {
  if (!coeff) return pattern_;
  return assemble([&](const Tetrahedron& c) { return local_reaction(c, coeff, t); });
}

Vector Assembler::load(const ScalarField& forcing, double t) const {
  Vector b = Vector::Zero(static_cast<Eigen::Index>(num_dofs()));
  if (!forcing) return b;
  for (const auto& cell : mesh_->cells()) {
    const LocalVector local = local_load(cell, forcing, t);
    for (int i = 0; i < 4; ++i) b[static_cast<Eigen::Index>(cell.dofs[i])] += local[i];
  }
  return b;
}

SparseMatrix assemble_mass(const PeriodicMesh& mesh) { return Assembler(mesh).mass(); }
SparseMatrix assemble_stiffness(const PeriodicMesh& mesh) { return Assembler(mesh).stiffness(); }
SparseMatrix assemble_advection(const PeriodicMesh& mesh, const VectorField& velocity, double t) {
  return Assembler(mesh).advection(velocity, t);
}
SparseMatrix assemble_reaction(const PeriodicMesh& mesh, const ScalarField& coeff, double t) {
  return Assembler(mesh).reaction(coeff, t);
}
Vector assemble_load(const PeriodicMesh& mesh, const ScalarField& forcing, double t) {
  return Assembler(mesh).load(forcing, t);
}

SparseMatrix compose_system(const SparseMatrix& mass, const SparseMatrix& stiffness, const SparseMatrix& advection,
                            const SparseMatrix& reaction, double diffusivity, double dt) {
  for (const SparseMatrix* m : {&stiffness, &advection, &reaction}) {
    if (m->rows() != mass.rows() || m->cols() != mass.cols()) {
      throw std::invalid_argument("compose_system: operand dimensions differ");
    }
  }
  SparseMatrix op = linear_combination(diffusivity, stiffness, 1.0, advection);
  op = linear_combination(1.0, op, 1.0, reaction);
  return linear_combination(1.0, mass, dt, op);
}

Vector interpolate(const PeriodicMesh& mesh, const ScalarField& fn, double t) {
  Vector u(static_cast<Eigen::Index>(mesh.num_dofs()));
  for (std::size_t i = 0; i < mesh.num_dofs(); ++i) u[static_cast<Eigen::Index>(i)] = fn(mesh.vertex(i), t);
  return u;
}

double l2_error(const PeriodicMesh& mesh, const Vector& coeffs, const ScalarField& exact, double t, int q) {
  if (static_cast<std::size_t>(coeffs.size()) != mesh.num_dofs()) throw std::invalid_argument("l2_error: size mismatch");
  const auto rule = tet_rule_collapsed(q);
  double sum = 0.0;
  for (const auto& cell : mesh.cells()) {
    double local = 0.0;
    for (const auto& qp : rule) {
      const auto lam = full_bary(qp);
      double uh = 0.0;
      for (int i = 0; i < 4; ++i) uh += lam[i] * coeffs[static_cast<Eigen::Index>(cell.dofs[i])];
      const double e = uh - exact(cell.map_from_reference(qp.bary[0], qp.bary[1], qp.bary[2]), t);
      local += qp.weight * e * e;
    }
    sum += local * cell.volume;
  }
  return std::sqrt(sum);
}

double l2_norm(const PeriodicMesh& mesh, const ScalarField& exact, double t, int q) {
  return l2_error(mesh, Vector::Zero(static_cast<Eigen::Index>(mesh.num_dofs())), exact, t, q);
}

}  // namespace tgapod
