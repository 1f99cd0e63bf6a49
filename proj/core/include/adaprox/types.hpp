#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace adaprox {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Row-compressed sparse matrix. Column indices are strictly increasing
/// within each row.
struct SparseMatrix {
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  std::vector<std::int64_t> row_offsets;  // size rows+1
  std::vector<std::int64_t> col_indices;
  std::vector<double> values;

  SparseMatrix() : row_offsets(1, 0) {}
  SparseMatrix(Eigen::Index r, Eigen::Index c)
      : rows(r), cols(c), row_offsets(static_cast<std::size_t>(r) + 1, 0) {}

  static SparseMatrix from_dense(const Matrix& d, double drop_tol = 0.0);

  Eigen::Index nnz() const { return static_cast<Eigen::Index>(values.size()); }

  void check_structure() const;

  Vector multiply(const Vector& x) const;            // A x
  Vector multiply_transpose(const Vector& y) const;  // A^T y
  Matrix to_dense() const;

  /// Spectral norm estimate by power iteration on A^T A.
  double operator_norm(int iters = 100, unsigned seed = 0) const;
};

}  // namespace adaprox
