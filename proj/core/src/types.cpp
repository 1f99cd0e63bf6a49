#include "adaprox/types.hpp"

#include <cmath>
#include <random>

namespace adaprox {

SparseMatrix SparseMatrix::from_dense(const Matrix& d, double drop_tol) {
  SparseMatrix a(d.rows(), d.cols());
  for (Eigen::Index i = 0; i < d.rows(); ++i) {
    for (Eigen::Index j = 0; j < d.cols(); ++j) {
      if (std::abs(d(i, j)) > drop_tol) {
        a.col_indices.push_back(j);
        a.values.push_back(d(i, j));
      }
    }
    a.row_offsets[static_cast<std::size_t>(i) + 1] =
        static_cast<std::int64_t>(a.values.size());
  }
  return a;
}

void SparseMatrix::check_structure() const {
  if (row_offsets.size() != static_cast<std::size_t>(rows) + 1)
    throw std::invalid_argument("SparseMatrix: row_offsets size mismatch");
  if (row_offsets.front() != 0 ||
      row_offsets.back() != static_cast<std::int64_t>(values.size()))
    throw std::invalid_argument("SparseMatrix: row_offsets inconsistent with values");
  if (col_indices.size() != values.size())
    throw std::invalid_argument("SparseMatrix: col_indices/values size mismatch");
  for (Eigen::Index i = 0; i < rows; ++i) {
    std::int64_t prev = -1;
    for (std::int64_t p = row_offsets[i]; p < row_offsets[i + 1]; ++p) {
      std::int64_t c = col_indices[static_cast<std::size_t>(p)];
      if (c <= prev || c >= cols)
        throw std::invalid_argument("SparseMatrix: bad column index in row " +
                                    std::to_string(i));
      prev = c;
    }
  }
}

Vector SparseMatrix::multiply(const Vector& x) const {
  if (x.size() != cols) throw std::invalid_argument("SparseMatrix::multiply: dimension mismatch");
  Vector y = Vector::Zero(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    double acc = 0.0;
    for (std::int64_t p = row_offsets[i]; p < row_offsets[i + 1]; ++p)
      acc += values[static_cast<std::size_t>(p)] *
             x[col_indices[static_cast<std::size_t>(p)]];
    y[i] = acc;
  }
  return y;
}

Vector SparseMatrix::multiply_transpose(const Vector& y) const {
  if (y.size() != rows) throw std::invalid_argument("SparseMatrix::multiply_transpose: dimension mismatch");
  Vector x = Vector::Zero(cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (std::int64_t p = row_offsets[i]; p < row_offsets[i + 1]; ++p)
      x[col_indices[static_cast<std::size_t>(p)]] +=
          values[static_cast<std::size_t>(p)] * y[i];
  return x;
}

Matrix SparseMatrix::to_dense() const {
  Matrix d = Matrix::Zero(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (std::int64_t p = row_offsets[i]; p < row_offsets[i + 1]; ++p)
      d(i, col_indices[static_cast<std::size_t>(p)]) =
          values[static_cast<std::size_t>(p)];
  return d;
}

double SparseMatrix::operator_norm(int iters, unsigned seed) const {
  if (nnz() == 0 || cols == 0) return 0.0;
  std::mt19937_64 rng(seed + 12345u);
  std::normal_distribution<double> gauss;
  Vector v(cols);
  for (Eigen::Index j = 0; j < cols; ++j) v[j] = gauss(rng);
  v.normalize();
  double lambda = 0.0;
  for (int t = 0; t < iters; ++t) {
    Vector w = multiply_transpose(multiply(v));
    double nw = w.norm();
    if (nw == 0.0) return 0.0;
    lambda = nw;
    v = w / nw;
  }
  return std::sqrt(lambda);
}

}  // namespace adaprox
