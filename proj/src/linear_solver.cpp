#include "tgapod/linear_solver.hpp"

#include <cmath>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

namespace tgapod {
namespace {

Vector solve_direct(const SparseMatrix& a, const Vector& rhs) {
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(a.nnz());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t p = a.row_ptr()[r]; p < a.row_ptr()[r + 1]; ++p) {
      triplets.emplace_back(static_cast<int>(r), static_cast<int>(a.col_idx()[p]), a.values()[p]);
    }
  }
  Eigen::SparseMatrix<double> m(static_cast<Eigen::Index>(a.rows()), static_cast<Eigen::Index>(a.cols()));
  m.setFromTriplets(triplets.begin(), triplets.end());
  m.makeCompressed();
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.compute(m);
  if (lu.info() != Eigen::Success) throw SolverError("sparse LU factorization failed: " + lu.lastErrorMessage(), 1.0);
  Vector x = lu.solve(rhs);
  if (lu.info() != Eigen::Success) throw SolverError("sparse LU solve failed", 1.0);
  return x;
}

// Restarted GMRES(m), right-preconditioned with D^{-1}.
bool gmres(const SparseMatrix& a, const Vector& b, Vector& x, const SolverConfig& cfg, SolveStats& stats) {
  const Eigen::Index n = b.size();
  const double b_norm = b.norm();
  const double target = cfg.rel_tol * b_norm;

  Vector inv_diag = a.diagonal();
  for (Eigen::Index i = 0; i < n; ++i) inv_diag[i] = inv_diag[i] != 0.0 ? 1.0 / inv_diag[i] : 1.0;

  const int m = std::max(1, cfg.restart);
  Matrix basis(n, m + 1);
  Matrix hess = Matrix::Zero(m + 1, m);
  Vector cs(m), sn(m), g(m + 1);
  Vector r(n), w(n), z(n);

  int total = 0;
  a.multiply(x, r);
  r = b - r;
  double beta = r.norm();
  stats.relative_residual = beta / b_norm;
  if (beta <= target) return true;

  while (total < cfg.max_iter) {
    basis.col(0) = r / beta;
    g.setZero();
    g[0] = beta;
    hess.setZero();
    int j = 0;
    for (; j < m && total < cfg.max_iter; ++j, ++total) {
      z = inv_diag.cwiseProduct(basis.col(j));
      a.multiply(z, w);
      // modified Gram-Schmidt
      for (int i = 0; i <= j; ++i) {
        hess(i, j) = w.dot(basis.col(i));
        w -= hess(i, j) * basis.col(i);
      }
      hess(j + 1, j) = w.norm();
      if (hess(j + 1, j) != 0.0) basis.col(j + 1) = w / hess(j + 1, j);

      for (int i = 0; i < j; ++i) {
        const double tmp = cs[i] * hess(i, j) + sn[i] * hess(i + 1, j);
        hess(i + 1, j) = -sn[i] * hess(i, j) + cs[i] * hess(i + 1, j);
        hess(i, j) = tmp;
      }
      const double denom = std::hypot(hess(j, j), hess(j + 1, j));
      cs[j] = denom != 0.0 ? hess(j, j) / denom : 1.0;
      sn[j] = denom != 0.0 ? hess(j + 1, j) / denom : 0.0;
      hess(j, j) = denom;
      hess(j + 1, j) = 0.0;
      g[j + 1] = -sn[j] * g[j];
      g[j] = cs[j] * g[j];
      if (std::abs(g[j + 1]) <= 0.5 * target || denom == 0.0) {
        ++j;
        ++total;
        break;
      }
    }

    const Vector y = hess.topLeftCorner(j, j).triangularView<Eigen::Upper>().solve(g.head(j));
    z = basis.leftCols(j) * y;
    x += inv_diag.cwiseProduct(z);

    a.multiply(x, r);
    r = b - r;
    beta = r.norm();
    stats.iterations = total;
    stats.relative_residual = beta / b_norm;
    if (beta <= target) return true;
    if (!std::isfinite(beta)) return false;
  }
  return false;
}

}  // namespace

void SolverConfig::validate() const {
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw std::invalid_argument("solver rel_tol must lie in (0, 1)");
  if (max_iter < 1) throw std::invalid_argument("solver max_iter must be at least 1");
  if (restart < 1) throw std::invalid_argument("solver restart must be at least 1");
}

Vector solve_linear(const SparseMatrix& a, const Vector& rhs, const SolverConfig& cfg, const Vector* guess,
                    SolveStats* stats) {
  if (a.rows() != a.cols() || static_cast<std::size_t>(rhs.size()) != a.rows()) {
    throw std::invalid_argument("solve_linear: matrix must be square and match the right-hand side");
  }
  SolveStats local;
  SolveStats& st = stats ? *stats : local;
  st = SolveStats{};

  if (rhs.norm() == 0.0) return Vector::Zero(rhs.size());

  auto direct = [&]() {
    Vector x = solve_direct(a, rhs);
    st.used_direct = true;
    st.relative_residual = (a * x - rhs).norm() / rhs.norm();
    if (!(st.relative_residual <= cfg.rel_tol)) {
      throw SolverError("direct solve missed the residual tolerance", st.relative_residual);
    }
    return x;
  };

  if (cfg.method == SolverMethod::Direct) return direct();

  Vector x = (guess && guess->size() == rhs.size()) ? *guess : Vector::Zero(rhs.size());
  if (gmres(a, rhs, x, cfg, st)) return x;
  if (a.rows() <= cfg.direct_fallback_max_dofs) return direct();
  throw SolverError("GMRES did not converge within " + std::to_string(cfg.max_iter) + " iterations",
                    st.relative_residual);
}

}  // namespace tgapod
