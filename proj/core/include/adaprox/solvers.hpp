#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "adaprox/problem.hpp"
#include "adaprox/stepsize.hpp"

namespace adaprox {

/// One trace row per produced iterate x^k. Curvature estimates are the pair
/// computed from (x^{k-1}, x^k), i.e. the inputs of the update that yields
/// gamma_{k+1}. pi/xi are NaN for solvers without schedule parameters.
struct IterationRecord {
  long k = 0;
  double gamma = 0.0;
  double rho = 1.0;
  double pi = std::numeric_limits<double>::quiet_NaN();
  double xi = std::numeric_limits<double>::quiet_NaN();
  double objective = 0.0;
  double step_norm = 0.0;  // |x^k - x^{k-1}|
  double residual = 0.0;   // step_norm / gamma (fixed-point residual)
  double ell = 0.0;
  double big_l = 0.0;
  long grad_evals = 0;  // cumulative
  long prox_evals = 0;  // cumulative
  double wall_time = 0.0;
  // Populated when SolveOptions::record_vectors; required by the
  // trajectory certificates.
  Vector x;
  Vector grad;
};

struct StoppingRule {
  long max_iters = 100000;
  double tol_fixedpoint = 1e-8;
  std::optional<double> target_objective;

  void require_valid() const {
    if (max_iters < 1 || tol_fixedpoint < 0.0)
      throw std::invalid_argument("StoppingRule: max_iters >= 1 and tol >= 0 required");
  }
};

struct SolveOptions {
  bool record_vectors = true;
};

struct SolveResult {
  std::string solver_id;
  Vector x;
  std::vector<IterationRecord> trace;
  bool converged = false;
};

/// Fixed-parameter adaptive proximal gradient. x_init plays the role of
/// x^{-1}; the first trace row is the prescribed initialization step
/// x^0 = prox_{gamma0 g}(x^{-1} - gamma0 grad f(x^{-1})).
SolveResult run_adapg(const CompositeProblem& problem, const Vector& x_init,
                      double gamma0, const FixedParams& p,
                      const StoppingRule& stop, const SolveOptions& opts = {});

/// Per-step parameter choice for the general framework: given (k, gamma_k,
/// ell_k) and the current parameters, returns (pi_{k+1}, xi_{k+1}).
using ParamSchedule = std::function<std::pair<double, double>(
    long k, double gamma_k, double ell_k, const ScheduleParams& current)>;

/// General time-varying framework. Each schedule output is validated; a
/// violation aborts the run with an error naming the constraint and the
/// offending iteration.
SolveResult run_general(const CompositeProblem& problem, const Vector& x_init,
                        double gamma0, const ScheduleParams& initial,
                        const ParamSchedule& schedule, const StoppingRule& stop,
                        const SolveOptions& opts = {});

/// Proximal gradient with nonmonotone backtracking: sufficient decrease
///   f(x+) <= f(x) + <grad f(x), x+ - x> + |x+ - x|^2/(2 gamma),
/// halving gamma on failure; each iteration warm-starts at b * gamma_prev.
SolveResult run_pg_backtracking(const CompositeProblem& problem,
                                const Vector& x_init, double gamma0, double b,
                                const StoppingRule& stop,
                                const SolveOptions& opts = {});

/// Accelerated proximal gradient with constant step 1/L_f and momentum
/// t_{k+1} = (1 + sqrt(1 + 4 t_k^2))/2.
SolveResult run_nesterov(const CompositeProblem& problem, const Vector& x_init,
                         double l_f, const StoppingRule& stop,
                         const SolveOptions& opts = {});

/// Adaptive PG with the unimproved second stepsize term (adapg_baseline_stepsize).
SolveResult run_adapg_baseline(const CompositeProblem& problem,
                               const Vector& x_init, double gamma0,
                               const StoppingRule& stop,
                               const SolveOptions& opts = {});

/// Adaptive PG using only the L_k estimate (adapg_mm_stepsize).
SolveResult run_adapg_mm(const CompositeProblem& problem, const Vector& x_init,
                         double gamma0, const StoppingRule& stop,
                         const SolveOptions& opts = {});

}  // namespace adaprox
