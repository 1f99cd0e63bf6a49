#include "adaprox/ama.hpp"

namespace adaprox {

CurvatureEstimates ama_curvature(const Vector& x_prev, const Vector& x_curr,
                                 const Vector& y_prev, const Vector& y_curr,
                                 const SparseMatrix& a) {
  const Vector dy = y_curr - y_prev;
  const double dy2 = dy.squaredNorm();
  if (dy2 == 0.0) return {0.0, 0.0};
  // A(x_curr) - A(x_prev) rather than A(x_curr - x_prev): algebraically the
  // same, but it matches the gradient-difference arithmetic of the dual
  // proximal-gradient view bit for bit.
  const Vector adx = a.multiply(x_curr) - a.multiply(x_prev);
  CurvatureEstimates est;
  est.ell = -adx.dot(dy) / dy2;
  est.big_l = adx.norm() / std::sqrt(dy2);
  return est;
}

AmaResult run_adaama(const AmaProblem& problem, const Vector& y_init,
                     double gamma0, const FixedParams& p,
                     const StoppingRule& stop) {
  p.require_valid();
  stop.require_valid();
  if (!(gamma0 > 0.0))
    throw std::invalid_argument("adaama: gamma0 must be positive");
  if (y_init.size() != problem.dual_dim)
    throw std::invalid_argument("adaama: y_init has wrong dimension");

  AmaResult res;

  auto x_oracle = [&](const Vector& y, long k) {
    try {
      return problem.psi1_linearized_argmin(y);
    } catch (const std::exception& e) {
      throw std::runtime_error("adaama: x-oracle failed at iteration " +
                               std::to_string(k) + ": " + e.what());
    }
  };

  auto record_of = [&](long k, const StepsizePair& sp,
                       const CurvatureEstimates& est, const Vector& x,
                       const Vector& ax, const Vector& z, const Vector& y,
                       const Vector& y_before) {
    AmaRecord rec;
    rec.k = k;
    rec.gamma = sp.gamma_curr;
    rec.rho = sp.rho;
    rec.ell = est.ell;
    rec.big_l = est.big_l;
    rec.primal_residual = (ax - z).norm();
    rec.dual_step_norm = (y - y_before).norm();
    rec.objective = (problem.psi1_value ? problem.psi1_value(x) : 0.0) +
                    (problem.psi2_value ? problem.psi2_value(z) : 0.0);
    rec.x = x;
    rec.z = z;
    rec.y = y;
    return rec;
  };

  // Initialization: x^{-1}, z^0 minimizing the gamma0-augmented Lagrangian
  // in z, and the corresponding multiplier step.
  Vector y_prev = y_init;
  Vector x_prev = x_oracle(y_prev, -1);
  Vector ax_prev = problem.matrix_a.multiply(x_prev);
  StepsizePair sp = StepsizePair::initial(gamma0);
  Vector u = y_prev + gamma0 * ax_prev;
  Vector z = problem.psi2_prox(u / gamma0, gamma0);
  Vector y_curr = y_prev + gamma0 * (ax_prev - z);
  res.trace.push_back(
      record_of(0, sp, {0.0, 0.0}, x_prev, ax_prev, z, y_curr, y_prev));

  Vector x_curr;
  for (long k = 0;; ++k) {
    if (res.trace.back().primal_residual <= stop.tol_fixedpoint) {
      res.converged = true;
      break;
    }
    if (k + 1 >= stop.max_iters) break;

    x_curr = x_oracle(y_curr, k);
    Vector ax_curr = problem.matrix_a.multiply(x_curr);
    CurvatureEstimates est =
        ama_curvature(x_prev, x_curr, y_prev, y_curr, problem.matrix_a);
    const double gamma_next = adapg_stepsize(sp, est, p);
    sp.advance(gamma_next);

    u = y_curr + gamma_next * ax_curr;
    z = problem.psi2_prox(u / gamma_next, gamma_next);
    Vector y_next = y_curr + gamma_next * (ax_curr - z);

    res.trace.push_back(
        record_of(k + 1, sp, est, x_curr, ax_curr, z, y_next, y_curr));

    x_prev = std::move(x_curr);
    ax_prev = std::move(ax_curr);
    y_prev = std::move(y_curr);
    y_curr = std::move(y_next);
  }

  res.x = res.trace.back().x;
  res.y = y_curr;
  return res;
}

}  // namespace adaprox
