#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <tuple>
#include <vector>

#include <Eigen/Core>

namespace tgapod {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Compressed-row sparse matrix with sorted, duplicate-free column indices.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols, std::vector<std::size_t> row_ptr,
               std::vector<std::size_t> col_idx, std::vector<double> values);

  /// Builds from (row, col, value) triplets. Duplicates are summed in input order.
  static SparseMatrix from_triplets(std::size_t rows, std::size_t cols,
                                    std::span<const std::tuple<std::size_t, std::size_t, double>> triplets);
  static SparseMatrix identity(std::size_t n);
  static SparseMatrix from_dense(const Matrix& dense, double drop_tol = 0.0);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const { return values_.size(); }

  const std::vector<std::size_t>& row_ptr() const { return row_ptr_; }
  const std::vector<std::size_t>& col_idx() const { return col_idx_; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  /// Entry lookup by binary search; zero when not stored.
  double coeff(std::size_t row, std::size_t col) const;

  /// y = A x, rows accumulated left to right.
  void multiply(const Vector& x, Vector& y) const;
  Vector operator*(const Vector& x) const;
  /// Sparse times dense, column by column.
  Matrix operator*(const Matrix& x) const;

  Vector diagonal() const;
  SparseMatrix transpose() const;
  Matrix to_dense() const;

  bool same_pattern(const SparseMatrix& other) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<std::size_t> col_idx_;
  std::vector<double> values_;
};

/// alpha·A + beta·B. Patterns are merged when they differ.
SparseMatrix linear_combination(double alpha, const SparseMatrix& a, double beta, const SparseMatrix& b);

/// "row col value" per line, zero-based.
void write_coordinate(std::ostream& os, const SparseMatrix& m);

}  // namespace tgapod
