#include "tgapod/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace tgapod {

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols, std::vector<std::size_t> row_ptr,
                           std::vector<std::size_t> col_idx, std::vector<double> values)
    : rows_(rows), cols_(cols), row_ptr_(std::move(row_ptr)), col_idx_(std::move(col_idx)),
      values_(std::move(values)) {
  if (row_ptr_.size() != rows_ + 1 || col_idx_.size() != values_.size() || row_ptr_.back() != values_.size()) {
    throw std::invalid_argument("sparse matrix: inconsistent CSR arrays");
  }
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) {
      if (col_idx_[p] >= cols_) throw std::invalid_argument("sparse matrix: column index out of range");
      if (p > row_ptr_[r] && col_idx_[p] <= col_idx_[p - 1]) {
        throw std::invalid_argument("sparse matrix: columns must be strictly increasing per row");
      }
    }
  }
}

SparseMatrix SparseMatrix::from_triplets(
    std::size_t rows, std::size_t cols, std::span<const std::tuple<std::size_t, std::size_t, double>> triplets) {
  std::vector<std::size_t> order(triplets.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& [ra, ca, va] = triplets[a];
    const auto& [rb, cb, vb] = triplets[b];
    return ra != rb ? ra < rb : ca < cb;
  });

  std::vector<std::size_t> row_ptr(rows + 1, 0);
  std::vector<std::size_t> col_idx;
  std::vector<double> values;
  std::size_t last_row = rows, last_col = cols;
  for (std::size_t idx : order) {
    const auto& [r, c, v] = triplets[idx];
    if (r >= rows || c >= cols) throw std::out_of_range("sparse matrix: triplet index out of range");
    if (r == last_row && c == last_col) {
      values.back() += v;
    } else {
      col_idx.push_back(c);
      values.push_back(v);
      ++row_ptr[r + 1];
      last_row = r;
      last_col = c;
    }
  }
  std::partial_sum(row_ptr.begin(), row_ptr.end(), row_ptr.begin());
  return SparseMatrix(rows, cols, std::move(row_ptr), std::move(col_idx), std::move(values));
}

SparseMatrix SparseMatrix::identity(std::size_t n) {
  std::vector<std::size_t> row_ptr(n + 1), col_idx(n);
  std::iota(row_ptr.begin(), row_ptr.end(), 0);
  std::iota(col_idx.begin(), col_idx.end(), 0);
  return SparseMatrix(n, n, std::move(row_ptr), std::move(col_idx), std::vector<double>(n, 1.0));
}

SparseMatrix SparseMatrix::from_dense(const Matrix& dense, double drop_tol) {
  std::vector<std::size_t> row_ptr{0}, col_idx;
  std::vector<double> values;
  for (Eigen::Index r = 0; r < dense.rows(); ++r) {
    for (Eigen::Index c = 0; c < dense.cols(); ++c) {
      if (std::abs(dense(r, c)) > drop_tol) {
        col_idx.push_back(static_cast<std::size_t>(c));
        values.push_back(dense(r, c));
      }
    }
    row_ptr.push_back(col_idx.size());
  }
  return SparseMatrix(static_cast<std::size_t>(dense.rows()), static_cast<std::size_t>(dense.cols()),
                      std::move(row_ptr), std::move(col_idx), std::move(values));
}

double SparseMatrix::coeff(std::size_t row, std::size_t col) const {
  const auto first = col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[row]);
  const auto last = col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[row + 1]);
  const auto it = std::lower_bound(first, last, col);
  if (it == last || *it != col) return 0.0;
  return values_[static_cast<std::size_t>(it - col_idx_.begin())];
}

void SparseMatrix::multiply(const Vector& x, Vector& y) const {
  if (static_cast<std::size_t>(x.size()) != cols_) throw std::invalid_argument("sparse mat-vec: dimension mismatch");
  y.resize(static_cast<Eigen::Index>(rows_));
  for (std::size_t r = 0; r < rows_; ++r) {
    double acc = 0.0;
    for (std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) acc += values_[p] * x[static_cast<Eigen::Index>(col_idx_[p])];
    y[static_cast<Eigen::Index>(r)] = acc;
  }
}

Vector SparseMatrix::operator*(const Vector& x) const {
  Vector y;
  multiply(x, y);
  return y;
}

Matrix SparseMatrix::operator*(const Matrix& x) const {
  if (static_cast<std::size_t>(x.rows()) != cols_) throw std::invalid_argument("sparse mat-mat: dimension mismatch");
  Matrix y = Matrix::Zero(static_cast<Eigen::Index>(rows_), x.cols());
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) {
      y.row(static_cast<Eigen::Index>(r)) += values_[p] * x.row(static_cast<Eigen::Index>(col_idx_[p]));
    }
  }
  return y;
}

Vector SparseMatrix::diagonal() const {
  Vector d = Vector::Zero(static_cast<Eigen::Index>(std::min(rows_, cols_)));
  for (std::size_t r = 0; r < static_cast<std::size_t>(d.size()); ++r) d[static_cast<Eigen::Index>(r)] = coeff(r, r);
  return d;
}

SparseMatrix SparseMatrix::transpose() const {
  std::vector<std::size_t> row_ptr(cols_ + 1, 0);
  for (std::size_t c : col_idx_) ++row_ptr[c + 1];
  std::partial_sum(row_ptr.begin(), row_ptr.end(), row_ptr.begin());
  std::vector<std::size_t> next(row_ptr.begin(), row_ptr.end() - 1);
  std::vector<std::size_t> col_idx(nnz());
  std::vector<double> values(nnz());
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) {
      const std::size_t dst = next[col_idx_[p]]++;
      col_idx[dst] = r;
      values[dst] = values_[p];
    }
  }
  return SparseMatrix(cols_, rows_, std::move(row_ptr), std::move(col_idx), std::move(values));
}

Matrix SparseMatrix::to_dense() const {
  Matrix d = Matrix::Zero(static_cast<Eigen::Index>(rows_), static_cast<Eigen::Index>(cols_));
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) {
      d(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(col_idx_[p])) = values_[p];
    }
  }
  return d;
}

bool SparseMatrix::same_pattern(const SparseMatrix& other) const {
  return rows_ == other.rows_ && cols_ == other.cols_ && row_ptr_ == other.row_ptr_ && col_idx_ == other.col_idx_;
}

SparseMatrix linear_combination(double alpha, const SparseMatrix& a, double beta, const SparseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("sparse linear combination: dimension mismatch");
  }
  if (a.same_pattern(b)) {
    std::vector<double> values(a.nnz());
    for (std::size_t p = 0; p < values.size(); ++p) values[p] = alpha * a.values()[p] + beta * b.values()[p];
    return SparseMatrix(a.rows(), a.cols(), a.row_ptr(), a.col_idx(), std::move(values));
  }

  std::vector<std::size_t> row_ptr{0}, col_idx;
  std::vector<double> values;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    std::size_t pa = a.row_ptr()[r], pb = b.row_ptr()[r];
    const std::size_t ea = a.row_ptr()[r + 1], eb = b.row_ptr()[r + 1];
    while (pa < ea || pb < eb) {
      const std::size_t ca = pa < ea ? a.col_idx()[pa] : a.cols();
      const std::size_t cb = pb < eb ? b.col_idx()[pb] : b.cols();
      if (ca == cb) {
        col_idx.push_back(ca);
        values.push_back(alpha * a.values()[pa++] + beta * b.values()[pb++]);
      } else if (ca < cb) {
        col_idx.push_back(ca);
        values.push_back(alpha * a.values()[pa++]);
      } else {
        col_idx.push_back(cb);
        values.push_back(beta * b.values()[pb++]);
      }
    }
    row_ptr.push_back(col_idx.size());
  }
  return SparseMatrix(a.rows(), a.cols(), std::move(row_ptr), std::move(col_idx), std::move(values));
}

void write_coordinate(std::ostream& os, const SparseMatrix& m) {
  os.precision(17);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t p = m.row_ptr()[r]; p < m.row_ptr()[r + 1]; ++p) {
      os << r << ' ' << m.col_idx()[p] << ' ' << m.values()[p] << '\n';
    }
  }
}

}  // namespace tgapod
