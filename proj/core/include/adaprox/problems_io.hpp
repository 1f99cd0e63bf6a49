#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "adaprox/problem.hpp"

namespace adaprox {

struct LabeledDataset {
  SparseMatrix features;  // sample_count x feature_count
  Vector labels;
  Eigen::Index sample_count() const { return features.rows; }
  Eigen::Index feature_count() const { return features.cols; }
};

struct ParseError : std::runtime_error {
  long line;
  long column;
  ParseError(long line_, long column_, const std::string& what)
      : std::runtime_error("line " + std::to_string(line_) + ", column " +
                           std::to_string(column_) + ": " + what),
        line(line_), column(column_) {}
};

/// LIBSVM sparse text format: "<label> <idx>:<val> ..." per line, 1-based
/// strictly increasing indices, '#' comments and blank lines skipped.
/// feature_count is the largest index seen unless overridden. Malformed
/// input raises ParseError with line/column; never crashes on arbitrary
/// bytes.
LabeledDataset parse_libsvm(std::istream& in,
                            std::optional<Eigen::Index> feature_count = {});
LabeledDataset load_libsvm(const std::string& path,
                           std::optional<Eigen::Index> feature_count = {});
void serialize_libsvm(const LabeledDataset& ds, std::ostream& out);

/// l1-regularized logistic regression:
///   f(w) = (1/m) sum_i log(1 + exp(-y_i a_i^T w)),   g = lambda1 |.|_1.
/// lipschitz_hint is the classical bound |A|^2 / (4m).
CompositeProblem build_logistic_problem(const LabeledDataset& ds, double lambda1);

/// Cubic-regularized quadratic model:
///   f(x) = (1/2) x^T H x + c^T x,   g = (sigma/3) |x|^3.
CompositeProblem build_cubic_problem(const Matrix& hessian, const Vector& linear,
                                     double sigma, double symmetry_tol = 1e-10);

/// Logistic second-order data at w = 0: H = A^T A/(4m), c = grad f(0).
/// Convenience assembly for the cubic problem class.
void logistic_model_at_zero(const LabeledDataset& ds, Matrix* hessian,
                            Vector* linear);

struct LassoInstance {
  Matrix matrix;
  Vector rhs;
  double lambda = 1.0;
  std::optional<Vector> planted_solution;

  CompositeProblem to_problem() const;
  /// max |A^T(A x* - b)|_i over off-support entries must stay below lambda,
  /// support entries must touch it.
  bool certify(double rel_tol = 1e-10) const;
};

/// Synthetic instance with a planted s-sparse optimum: columns of a random
/// matrix are rescaled so that the optimality condition of the planted
/// support holds exactly by construction.
LassoInstance generate_lasso(Eigen::Index n, Eigen::Index m, Eigen::Index s,
                             double lambda, std::uint64_t seed);

/// Instance serialization: JSON manifest {format_version, n, m, lambda,
/// seed} next to CSV payloads for the matrix, rhs and planted solution.
void save_lasso(const LassoInstance& inst, const std::string& dir,
                std::uint64_t seed);
LassoInstance load_lasso(const std::string& dir);

}  // namespace adaprox
