#pragma once

#include "adaprox/solvers.hpp"

namespace adaprox {

/// Structured problem  min_x psi1(x) + psi2(A x)  with psi1 locally strongly
/// convex and 1-coercive (its conjugate is then smooth), attacked through its
/// dual by adaptive proximal gradient steps expressed in primal variables.
///
/// psi1 is accessed only through the linearized argmin oracle
///   y |-> argmin_x { psi1(x) + <y, A x> };
/// the conjugate psi1* is never required to run the method (only the
/// optional diagnostics/equivalence tests use it).
struct AmaProblem {
  Eigen::Index primal_dim = 0;  // n
  Eigen::Index dual_dim = 0;    // m
  SparseMatrix matrix_a;        // m x n
  std::function<Vector(const Vector&)> psi1_linearized_argmin;
  std::function<Vector(const Vector&, double)> psi2_prox;  // prox_{psi2/gamma}(v)
  std::function<double(const Vector&)> psi1_value;
  std::function<double(const Vector&)> psi2_value;
};

/// Per-iteration trace of the alternating scheme. The multiplier identity
/// y^{k+1} = y^k + gamma_{k+1}(A x^k - z^{k+1}) holds exactly by
/// construction.
struct AmaRecord {
  long k = 0;
  double gamma = 0.0;
  double rho = 1.0;
  double ell = 0.0;
  double big_l = 0.0;
  double primal_residual = 0.0;  // |A x^k - z^{k+1}|
  double dual_step_norm = 0.0;   // |y^{k+1} - y^k|
  double objective = 0.0;        // psi1(x^k) + psi2(z^{k+1})
  Vector x, z, y;
};

struct AmaResult {
  Vector x;
  Vector y;
  std::vector<AmaRecord> trace;
  bool converged = false;
};

/// Curvature estimates of the dual smooth part, expressed in primal
/// quantities via grad f(y^k) = -A x^k:
///   ell   = -<A dx, dy>/|dy|^2,   big_l = |A dx| / |dy|.
/// big_l is the square root of the displayed squared ratio so that it is
/// dimensionally a Lipschitz modulus, matching the primal-side estimate
/// pair; the squared form in the source display is a typo.
CurvatureEstimates ama_curvature(const Vector& x_prev, const Vector& x_curr,
                                 const Vector& y_prev, const Vector& y_curr,
                                 const SparseMatrix& a);

/// Adaptive alternating minimization:
///   x-step  x^k = argmin psi1 + <y^k, A .>
///   stepsize from ama_curvature with the fixed-parameter rule
///   z-step  z^{k+1} = prox_{psi2/gamma_{k+1}}(y^k/gamma_{k+1} + A x^k)
///   y-step  y^{k+1} = y^k + gamma_{k+1}(A x^k - z^{k+1})
/// Stops when max(primal residual, dual step / gamma) <= tol.
AmaResult run_adaama(const AmaProblem& problem, const Vector& y_init,
                     double gamma0, const FixedParams& p,
                     const StoppingRule& stop);

}  // namespace adaprox
