#include "tgapod/pod.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <stdexcept>

#include <Eigen/Dense>

namespace tgapod {

ThinSvd thin_svd(const Matrix& u) {
  ThinSvd out;
  const Eigen::Index rows = u.rows(), cols = u.cols();
  if (rows == 0 || cols == 0 || u.isZero(0.0)) {
    out.left.resize(rows, 0);
    out.values.resize(0);
    out.right.resize(cols, 0);
    return out;
  }

  Matrix left, right;
  Vector values;
  if (rows >= cols) {
    // U = Q R, R = W Σ Vᵀ  ⇒  U = (Q W) Σ Vᵀ
    Eigen::HouseholderQR<Matrix> qr(u);
    const Matrix q = qr.householderQ() * Matrix::Identity(rows, cols);
    const Matrix r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
    Eigen::JacobiSVD<Matrix> svd(r, Eigen::ComputeFullU | Eigen::ComputeFullV);
    left = q * svd.matrixU();
    values = svd.singularValues();
    right = svd.matrixV();
  } else {
    Eigen::JacobiSVD<Matrix> svd(u, Eigen::ComputeThinU | Eigen::ComputeThinV);
    left = svd.matrixU();
    values = svd.singularValues();
    right = svd.matrixV();
  }

  const double cutoff = static_cast<double>(std::max(rows, cols)) * values[0] * 1e-12;
  Eigen::Index r = 0;
  while (r < values.size() && values[r] > cutoff) ++r;
  out.left = left.leftCols(r);
  out.values = values.head(r);
  out.right = right.leftCols(r);
  return out;
}

ThinSvd thin_svd(const SnapshotMatrix& u) { return thin_svd(u.to_matrix()); }

std::size_t select_mode_count(const Vector& singular_values, double gamma) {
  if (singular_values.size() == 0) return 0;
  const double threshold = gamma * singular_values.sum();
  double partial = 0.0;
  for (Eigen::Index k = 0; k < singular_values.size(); ++k) {
    partial += singular_values[k];
    if (partial > threshold) return static_cast<std::size_t>(k + 1);
  }
  return static_cast<std::size_t>(singular_values.size());
}

namespace {

void check_fraction(double gamma, const char* name) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument(std::string(name) + " must lie in (0, 1)");
}

PodBasis truncate(const ThinSvd& svd, double gamma) {
  const std::size_t m = select_mode_count(svd.values, gamma);
  return PodBasis{svd.left.leftCols(static_cast<Eigen::Index>(m)), svd.values};
}

}  // namespace

PodBasis pod_mode(const Matrix& snapshots, double gamma) {
  check_fraction(gamma, "POD energy fraction");
  const ThinSvd svd = thin_svd(snapshots);
  if (svd.rank() == 0) throw std::invalid_argument("pod_mode: snapshots are all zero, no basis representable");
  return truncate(svd, gamma);
}

PodBasis pod_mode(const SnapshotMatrix& snapshots, double gamma) {
  if (snapshots.empty()) throw std::invalid_argument("pod_mode: no snapshots");
  return pod_mode(snapshots.to_matrix(), gamma);
}

PodBasis update_pod_mode(const Matrix& new_snapshots, double gamma2, double gamma3, const PodBasis& old) {
  check_fraction(gamma2, "update fraction gamma2");
  check_fraction(gamma3, "update fraction gamma3");
  if (new_snapshots.rows() != old.modes.rows()) {
    throw std::invalid_argument("update_pod_mode: snapshot length differs from mode length");
  }
  const ThinSvd first = thin_svd(new_snapshots);
  const std::size_t m1 = select_mode_count(first.values, gamma2);

  Matrix combined(old.modes.rows(), static_cast<Eigen::Index>(m1) + old.modes.cols());
  combined << first.left.leftCols(static_cast<Eigen::Index>(m1)), old.modes;
  const ThinSvd second = thin_svd(combined);
  if (second.rank() == 0) throw std::invalid_argument("update_pod_mode: no basis representable");
  return truncate(second, gamma3);
}

PodBasis update_pod_mode(const SnapshotMatrix& new_snapshots, double gamma2, double gamma3, const PodBasis& old) {
  if (new_snapshots.empty()) throw std::invalid_argument("update_pod_mode: no snapshots");
  return update_pod_mode(new_snapshots.to_matrix(), gamma2, gamma3, old);
}

ReducedSystem reduce_system(const SparseMatrix& a, const Vector& b, const SparseMatrix& c, const PodBasis& basis) {
  const auto n = static_cast<std::size_t>(basis.modes.rows());
  if (a.rows() != n || a.cols() != n || c.rows() != n || c.cols() != n || static_cast<std::size_t>(b.size()) != n) {
    throw std::invalid_argument("reduce_system: operator dimensions do not match the basis");
  }
  const Matrix& r = basis.modes;
  ReducedSystem out;
  out.a = r.transpose() * (a * r);
  out.b = r.transpose() * b;
  out.c = r.transpose() * (c * r);
  return out;
}

Vector pod_step(const Vector& prev_reduced, const ReducedSystem& reduced) {
  const Eigen::Index m = reduced.a.rows();
  if (m < 1) throw std::invalid_argument("pod_step: empty reduced system");
  if (reduced.a.cols() != m || reduced.c.rows() != m || reduced.c.cols() != m || reduced.b.size() != m ||
      prev_reduced.size() != m) {
    throw std::invalid_argument("pod_step: reduced dimensions disagree");
  }
  Eigen::FullPivLU<Matrix> lu(reduced.a);
  if (!lu.isInvertible()) throw SolverError("pod_step: reduced system matrix is singular", 1.0);
  return lu.solve(reduced.b + reduced.c * prev_reduced);
}

Vector restrict_state(const PodBasis& basis, const Vector& u) {
  if (u.size() != basis.modes.rows()) throw std::invalid_argument("restrict_state: dimension mismatch");
  return basis.modes.transpose() * u;
}

Vector lift_state(const PodBasis& basis, const Vector& reduced) {
  if (reduced.size() != basis.modes.cols()) throw std::invalid_argument("lift_state: dimension mismatch");
  return basis.modes * reduced;
}

ReducedModel::ReducedModel(const FemSystem& system, PodBasis basis) : system_(&system), basis_(std::move(basis)) {
  if (basis_.dofs() != system.num_dofs()) throw std::invalid_argument("ReducedModel: basis does not fit the system");
  const Matrix& r = basis_.modes;
  mass_ = r.transpose() * (system.mass() * r);
  stiffness_ = r.transpose() * (system.stiffness() * r);
}

ReducedSystem ReducedModel::system_at(double t) const {
  const Matrix& r = basis_.modes;
  const double dt = system_->dt();
  Matrix op = system_->problem().diffusivity * stiffness_ + r.transpose() * (system_->advection(t) * r);
  if (system_->has_reaction()) op += r.transpose() * (system_->reaction(t) * r);
  ReducedSystem out;
  out.a = mass_ + dt * op;
  out.b = r.transpose() * system_->load(t);
  out.c = mass_;
  return out;
}

Vector ReducedModel::step(const Vector& prev_reduced, double t) const { return pod_step(prev_reduced, system_at(t)); }

void write_basis(std::ostream& os, const PodBasis& basis) {
  os.precision(17);
  os << basis.modes.rows() << ' ' << basis.modes.cols() << '\n';
  for (Eigen::Index c = 0; c < basis.modes.cols(); ++c) {
    for (Eigen::Index r = 0; r < basis.modes.rows(); ++r) os << basis.modes(r, c) << '\n';
  }
}

PodBasis read_basis(std::istream& is) {
  Eigen::Index rows = 0, cols = 0;
  if (!(is >> rows >> cols) || rows < 0 || cols < 0) throw std::runtime_error("read_basis: bad header");
  PodBasis basis;
  basis.modes.resize(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) {
      if (!(is >> basis.modes(r, c))) throw std::runtime_error("read_basis: truncated mode data");
    }
  }
  return basis;
}

}  // namespace tgapod
