#include "adaprox/solvers.hpp"

#include <chrono>
#include <cmath>

namespace adaprox {

namespace {

using Clock = std::chrono::steady_clock;

struct LoopContext {
  Clock::time_point start = Clock::now();
  long grad_evals = 0;
  long prox_evals = 0;

  double elapsed() const {
    return std::chrono::duration<double>(Clock::now() - start).count();
  }
};

IterationRecord make_record(long k, const StepsizePair& sp,
                            const CurvatureEstimates& est,
                            const CompositeProblem& problem, const Vector& x_prev,
                            const Vector& x_curr, const Vector& g_curr,
                            const LoopContext& ctx, const SolveOptions& opts) {
  IterationRecord rec;
  rec.k = k;
  rec.gamma = sp.gamma_curr;
  rec.rho = sp.rho;
  rec.objective = evaluate_objective(problem, x_curr);
  rec.step_norm = (x_curr - x_prev).norm();
  rec.residual = rec.step_norm / sp.gamma_curr;
  rec.ell = est.ell;
  rec.big_l = est.big_l;
  rec.grad_evals = ctx.grad_evals;
  rec.prox_evals = ctx.prox_evals;
  rec.wall_time = ctx.elapsed();
  if (opts.record_vectors) {
    rec.x = x_curr;
    rec.grad = g_curr;
  }
  return rec;
}

bool should_stop(const IterationRecord& rec, const StoppingRule& stop) {
  if (rec.residual <= stop.tol_fixedpoint) return true;
  if (stop.target_objective && rec.objective <= *stop.target_objective) return true;
  return false;
}

// Shared driver for every method of the form
//   x^{k+1} = prox_{gamma_{k+1} g}(x^k - gamma_{k+1} grad f(x^k))
// with a stepsize picked from (pair, curvature estimates). next_step may
// throw to abort at the offending iteration; it also reports the (pi, xi)
// pair to attach to the produced record (NaN when not applicable).
SolveResult run_secant_family(
    const std::string& solver_id, const CompositeProblem& problem,
    const Vector& x_init, double gamma0, const StoppingRule& stop,
    const SolveOptions& opts,
    const std::function<double(long k, const StepsizePair&,
                               const CurvatureEstimates&, double* pi,
                               double* xi)>& next_step) {
  stop.require_valid();
  problem.check_point(x_init);
  if (!(gamma0 > 0.0))
    throw std::invalid_argument(solver_id + ": gamma0 must be positive");

  LoopContext ctx;
  SolveResult res;
  res.solver_id = solver_id;

  Vector x_prev = x_init;
  Vector g_prev = problem.smooth_gradient(x_prev);
  ++ctx.grad_evals;
  Vector x_curr = problem.nonsmooth_prox
                      ? problem.nonsmooth_prox(x_prev - gamma0 * g_prev, gamma0)
                      : Vector(x_prev - gamma0 * g_prev);
  ++ctx.prox_evals;
  StepsizePair sp = StepsizePair::initial(gamma0);

  for (long k = 0;; ++k) {
    Vector g_curr = problem.smooth_gradient(x_curr);
    ++ctx.grad_evals;
    CurvatureEstimates est = estimate_curvature(x_prev, x_curr, g_prev, g_curr);

    double pi = std::numeric_limits<double>::quiet_NaN();
    double xi = std::numeric_limits<double>::quiet_NaN();
    double gamma_next;
    try {
      gamma_next = next_step(k, sp, est, &pi, &xi);
    } catch (const std::exception& e) {
      throw std::runtime_error(solver_id + ": iteration " + std::to_string(k) +
                               ": " + e.what());
    }

    IterationRecord rec =
        make_record(k, sp, est, problem, x_prev, x_curr, g_curr, ctx, opts);
    rec.pi = pi;
    rec.xi = xi;
    res.trace.push_back(std::move(rec));

    if (should_stop(res.trace.back(), stop)) {
      res.converged = res.trace.back().residual <= stop.tol_fixedpoint;
      break;
    }
    if (k + 1 >= stop.max_iters) break;

    Vector x_next =
        problem.nonsmooth_prox
            ? problem.nonsmooth_prox(x_curr - gamma_next * g_curr, gamma_next)
            : Vector(x_curr - gamma_next * g_curr);
    ++ctx.prox_evals;
    x_prev = std::move(x_curr);
    g_prev = std::move(g_curr);
    x_curr = std::move(x_next);
    sp.advance(gamma_next);
  }

  res.x = x_curr;
  return res;
}

}  // namespace

SolveResult run_adapg(const CompositeProblem& problem, const Vector& x_init,
                      double gamma0, const FixedParams& p,
                      const StoppingRule& stop, const SolveOptions& opts) {
  p.require_valid();
  const double xi_const = p.q / p.r - 1.0;
  return run_secant_family(
      "adapg", problem, x_init, gamma0, stop, opts,
      [&](long, const StepsizePair& sp, const CurvatureEstimates& est,
          double* pi, double* xi) {
        *pi = p.q;
        *xi = xi_const;
        return adapg_stepsize(sp, est, p);
      });
}

SolveResult run_general(const CompositeProblem& problem, const Vector& x_init,
                        double gamma0, const ScheduleParams& initial,
                        const ParamSchedule& schedule, const StoppingRule& stop,
                        const SolveOptions& opts) {
  ScheduleParams sched = initial;
  return run_secant_family(
      "general", problem, x_init, gamma0, stop, opts,
      [&](long k, const StepsizePair& sp, const CurvatureEstimates& est,
          double* pi, double* xi) {
        *pi = sched.pi_k;
        *xi = sched.xi_k;
        ScheduleParams next = sched;
        std::tie(next.pi_k, next.xi_k) = schedule(k, sp.gamma_curr, est.ell, sched);
        const double gamma_next = general_stepsize(sp, est, sched, next);
        sched = next;
        return gamma_next;
      });
}

SolveResult run_pg_backtracking(const CompositeProblem& problem,
                                const Vector& x_init, double gamma0, double b,
                                const StoppingRule& stop,
                                const SolveOptions& opts) {
  stop.require_valid();
  problem.check_point(x_init);
  if (!(gamma0 > 0.0))
    throw std::invalid_argument("pg-ls: gamma0 must be positive");
  if (!(b >= 1.0)) throw std::invalid_argument("pg-ls: requires b >= 1");

  LoopContext ctx;
  SolveResult res;
  res.solver_id = "pg-ls";

  Vector x_curr = x_init;
  Vector g_curr = problem.smooth_gradient(x_curr);
  ++ctx.grad_evals;
  double f_curr = problem.smooth_value(x_curr);
  StepsizePair sp = StepsizePair::initial(gamma0);
  double gamma_accepted = gamma0;
  bool warm_start = false;  // the very first trial uses gamma0 itself

  for (long k = 0;; ++k) {
    double gamma = warm_start ? b * gamma_accepted : gamma_accepted;
    Vector x_next;
    while (true) {
      if (gamma < 1e-300) throw std::runtime_error("pg-ls: backtracking collapse");
      Vector v = x_curr - gamma * g_curr;
      x_next = problem.nonsmooth_prox ? problem.nonsmooth_prox(v, gamma) : v;
      ++ctx.prox_evals;
      const Vector dx = x_next - x_curr;
      const double model =
          f_curr + g_curr.dot(dx) + dx.squaredNorm() / (2.0 * gamma);
      const double f_next = problem.smooth_value(x_next);
      if (f_next <= model + 1e-12 * (1.0 + std::abs(model))) break;
      gamma *= 0.5;
    }
    gamma_accepted = gamma;
    warm_start = true;
    sp.advance(gamma);

    Vector g_next = problem.smooth_gradient(x_next);
    ++ctx.grad_evals;
    CurvatureEstimates est = estimate_curvature(x_curr, x_next, g_curr, g_next);
    res.trace.push_back(
        make_record(k, sp, est, problem, x_curr, x_next, g_next, ctx, opts));

    x_curr = std::move(x_next);
    g_curr = std::move(g_next);
    f_curr = problem.smooth_value(x_curr);

    if (should_stop(res.trace.back(), stop)) {
      res.converged = res.trace.back().residual <= stop.tol_fixedpoint;
      break;
    }
    if (k + 1 >= stop.max_iters) break;
  }

  res.x = x_curr;
  return res;
}

SolveResult run_nesterov(const CompositeProblem& problem, const Vector& x_init,
                         double l_f, const StoppingRule& stop,
                         const SolveOptions& opts) {
  stop.require_valid();
  problem.check_point(x_init);
  if (!(l_f > 0.0)) throw std::invalid_argument("nesterov: L_f must be positive");

  LoopContext ctx;
  SolveResult res;
  res.solver_id = "nesterov";

  const double gamma = 1.0 / l_f;
  Vector x_curr = x_init;
  Vector y = x_init;
  double t = 1.0;
  StepsizePair sp = StepsizePair::initial(gamma);

  for (long k = 0;; ++k) {
    Vector g_y = problem.smooth_gradient(y);
    ++ctx.grad_evals;
    Vector v = y - gamma * g_y;
    Vector x_next = problem.nonsmooth_prox ? problem.nonsmooth_prox(v, gamma) : v;
    ++ctx.prox_evals;

    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    Vector y_next = x_next + ((t - 1.0) / t_next) * (x_next - x_curr);

    // Estimates are still recorded between consecutive x iterates so the
    // trace schema stays uniform, but no certificate relies on them here.
    CurvatureEstimates est{0.0, 0.0};
    res.trace.push_back(
        make_record(k, sp, est, problem, x_curr, x_next, g_y, ctx, opts));

    x_curr = std::move(x_next);
    y = std::move(y_next);
    t = t_next;

    if (should_stop(res.trace.back(), stop)) {
      res.converged = res.trace.back().residual <= stop.tol_fixedpoint;
      break;
    }
    if (k + 1 >= stop.max_iters) break;
  }

  res.x = x_curr;
  return res;
}

SolveResult run_adapg_baseline(const CompositeProblem& problem,
                               const Vector& x_init, double gamma0,
                               const StoppingRule& stop,
                               const SolveOptions& opts) {
  return run_secant_family(
      "adapg-baseline", problem, x_init, gamma0, stop, opts,
      [&](long, const StepsizePair& sp, const CurvatureEstimates& est, double*,
          double*) { return adapg_baseline_stepsize(sp, est); });
}

SolveResult run_adapg_mm(const CompositeProblem& problem, const Vector& x_init,
                         double gamma0, const StoppingRule& stop,
                         const SolveOptions& opts) {
  return run_secant_family(
      "adapg-mm", problem, x_init, gamma0, stop, opts,
      [&](long, const StepsizePair& sp, const CurvatureEstimates& est, double*,
          double*) { return adapg_mm_stepsize(sp, est); });
}

}  // namespace adaprox
