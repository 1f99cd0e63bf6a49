#pragma once

#include <functional>
#include <string>
#include <vector>

#include "adaprox/types.hpp"

namespace adaprox {

/// Soft-threshold: componentwise sign(v_i) * max(|v_i| - t, 0) with t = gamma*lambda.
Vector prox_l1(const Vector& v, double gamma_lambda);

/// Prox of g = (sigma/3) |.|^3 (Euclidean norm cube). Shrinks v radially by
/// the positive root r of  r + gamma*sigma*r^2 = |v|, written in the
/// cancellation-free form r = 2|v| / (1 + sqrt(1 + 4 gamma sigma |v|)).
Vector prox_cubic(const Vector& v, double gamma_sigma);

/// Projection onto the box [lo, hi]^n (prox of its indicator).
Vector project_box(const Vector& v, double lo, double hi);

/// argmin_x { (1/2) x^T Q x - b^T x + c^T x } = Q^{-1}(b - c) for SPD Q.
/// The factorization is done once per call; callers with a fixed Q should
/// prefer a prefactored functional oracle.
Vector linearized_argmin_quadratic(const Matrix& q_matrix, const Vector& b,
                                   const Vector& c);

/// Named closed-form prox entry: value and prox oracles plus the scalar
/// parameters they close over.
struct ProxCatalogEntry {
  std::string name;
  std::vector<double> parameters;
  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&, double)> prox;
};

ProxCatalogEntry make_zero_prox();
ProxCatalogEntry make_l1_prox(double lambda);
ProxCatalogEntry make_squared_l2_prox(double lambda);
ProxCatalogEntry make_box_prox(double lo, double hi);
ProxCatalogEntry make_norm_cube_prox(double sigma);

}  // namespace adaprox
