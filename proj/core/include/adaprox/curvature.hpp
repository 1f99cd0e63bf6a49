#pragma once

#include "adaprox/types.hpp"

namespace adaprox {

/// Secant-based local curvature estimates between two consecutive iterates:
///   ell   = <dg, dx> / |dx|^2      (co-coercivity direction)
///   big_l = |dg| / |dx|            (local Lipschitz modulus)
/// For convex f with L-Lipschitz gradient, 0 <= ell <= big_l <= L.
struct CurvatureEstimates {
  double ell = 0.0;
  double big_l = 0.0;
};

/// Gradients are supplied by the caller (g_prev = grad f(x_prev), etc.).
/// When the iterates coincide exactly both estimates are 0 (0/0 = 0
/// convention); the equality test is exact, not a tolerance, since a tiny
/// nonzero step still carries genuine curvature information.
inline CurvatureEstimates estimate_curvature(const Vector& x_prev,
                                             const Vector& x_curr,
                                             const Vector& g_prev,
                                             const Vector& g_curr) {
  const Vector dx = x_curr - x_prev;
  const double dx2 = dx.squaredNorm();
  if (dx2 == 0.0) return {0.0, 0.0};
  const Vector dg = g_curr - g_prev;
  CurvatureEstimates est;
  est.ell = dg.dot(dx) / dx2;
  est.big_l = dg.norm() / std::sqrt(dx2);
  return est;
}

}  // namespace adaprox
