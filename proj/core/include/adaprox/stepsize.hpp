#pragma once

#include <string>
#include <vector>

#include "adaprox/curvature.hpp"

namespace adaprox {

/// Constant-parameter configuration of the adaptive stepsize rule.
/// Requires q > r >= 1/2.
struct FixedParams {
  double q = 1.5;
  double r = 0.75;

  bool valid() const { return q > r && r >= 0.5; }
  void require_valid() const {
    if (!valid())
      throw std::invalid_argument("adaptive stepsize requires q > r >= 1/2");
  }
};

/// Time-varying parameter state for the general framework.
/// Invariants (enforced by validate_schedule_step):
///   1/2 < pi_min <= pi_max,  0 < xi_min <= 2*pi_min - 1,
///   xi_k >= xi_min,  r_k = pi_k/(1+xi_k) >= 1/2,
///   pi_min <= pi_k <= min{pi_max, pi_prev + [gamma*ell >= 1]}.
struct ScheduleParams {
  double pi_min = 0.75;
  double pi_max = 0.75;
  double xi_min = 0.5;
  double pi_k = 0.75;
  double xi_k = 0.5;

  double r_k() const { return pi_k / (1.0 + xi_k); }

  static ScheduleParams constant(const FixedParams& p) {
    ScheduleParams s;
    const double xi = p.q / p.r - 1.0;
    s.pi_min = s.pi_max = s.pi_k = p.q;
    s.xi_min = s.xi_k = xi;
    return s;
  }
};

/// Consecutive stepsizes and their ratio rho = gamma_curr/gamma_prev.
/// rho is maintained alongside the pair, never recomputed.
struct StepsizePair {
  double gamma_prev = 1.0;
  double gamma_curr = 1.0;
  double rho = 1.0;

  static StepsizePair initial(double gamma0) {
    return {gamma0, gamma0, 1.0};
  }
  void advance(double gamma_next) {
    gamma_prev = gamma_curr;
    gamma_curr = gamma_next;
    rho = gamma_next / gamma_prev;
  }
};

/// Fixed-parameter adaptive stepsize:
///   gamma+ = gamma * min{ sqrt(1/q + rho),
///                         sqrt((1 - r/q) / [g^2 L^2 + 2 g ell (r-1) - (2r-1)]_+) }
/// A bracket clamped to 0 makes the second term +inf (1/0 = inf convention),
/// i.e. inactive; the division by the clamped bracket is never performed.
double adapg_stepsize(const StepsizePair& sp, const CurvatureEstimates& est,
                      const FixedParams& p);

/// Time-varying stepsize rule of the general framework; sched_prev carries
/// (pi_k, xi_k), sched_next carries (pi_{k+1}, xi_{k+1}).
double general_stepsize(const StepsizePair& sp, const CurvatureEstimates& est,
                        const ScheduleParams& sched_prev,
                        const ScheduleParams& sched_next);

/// Checks the per-step parameter constraints; returns the violated
/// constraints by name (empty means ok).
std::vector<std::string> validate_schedule_step(const ScheduleParams& sched_prev,
                                                const ScheduleParams& sched_next,
                                                double gamma_k, double ell_k);

/// Baseline update with the unimproved second term (second term of the
/// (q,r)=(1,1/2) rule divided by sqrt 2):
///   gamma+ = gamma * min{ sqrt(1 + rho), 1 / (2 sqrt([g^2 L^2 - g ell]_+)) }
double adapg_baseline_stepsize(const StepsizePair& sp,
                               const CurvatureEstimates& est);

/// Curvature-only baseline update:
///   gamma+ = min{ gamma sqrt(1 + rho), 1/(sqrt 2 L) }
double adapg_mm_stepsize(const StepsizePair& sp, const CurvatureEstimates& est);

/// Worst-case shrink behaviour of the stepsize recovery recursion
/// rho_1 = sqrt(eps), rho_{t+1} = sqrt(eps + rho_t):
///   t_eps = largest t with rho_1..rho_t < 1 (0 when eps >= 1),
///   m     = prod_{t<=t_eps} rho_t (empty product = 1).
struct ShrinkFactor {
  int t_eps = 0;
  double m = 1.0;
};
ShrinkFactor m_epsilon(double eps);

/// Theoretical stepsize floor for the general framework:
///   m(1/pi_max) * sqrt(xi_min * r_min / pi_max) / L
double general_stepsize_lower_bound(double pi_max, double xi_min, double r_min,
                                    double big_l);

/// Fixed-parameter stepsize floor sqrt((1 - r/q)/max{1,q}) / L; only valid
/// for q <= (3+sqrt 5)/2. For larger q use the general bound (the two
/// coincide on the valid range via the constant-schedule reduction).
double stepsize_lower_bound(const FixedParams& p, double big_l);

/// Iteration index past which the stepsize floor is guaranteed:
///   2 * ceil_+( log_{1+1/q}(1/(gamma0 L)) )
long stepsize_bound_burn_in(double q_or_pi_max, double gamma0, double big_l);

/// Suggested (q, r) combinations with their normalized stepsize floors
/// gamma_min * L.
struct Preset {
  std::string name;
  double q;
  double r;
  double gamma_min_times_l;
};
const std::vector<Preset>& table1_presets();

}  // namespace adaprox
