#pragma once

#include <stdexcept>
#include <vector>

#include "tgapod/sparse.hpp"

namespace tgapod {

/// Ordered snapshot columns with their capture times.
class SnapshotMatrix {
 public:
  SnapshotMatrix() = default;
  explicit SnapshotMatrix(const Matrix& columns, std::vector<double> times = {});

  void append(const Vector& column, double time);

  std::size_t rows() const { return columns_.empty() ? 0 : static_cast<std::size_t>(columns_.front().size()); }
  std::size_t cols() const { return columns_.size(); }
  bool empty() const { return columns_.empty(); }
  const Vector& column(std::size_t i) const { return columns_[i]; }
  const std::vector<double>& times() const { return times_; }

  Matrix to_matrix() const;

 private:
  std::vector<Vector> columns_;
  std::vector<double> times_;
};

}  // namespace tgapod
