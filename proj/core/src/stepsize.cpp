#include "adaprox/stepsize.hpp"

#include <cmath>

namespace adaprox {

namespace {

// [t]_+ with the 1/0 = inf convention applied by callers.
inline double clamp_pos(double t) { return t > 0.0 ? t : 0.0; }

}  // namespace

double adapg_stepsize(const StepsizePair& sp, const CurvatureEstimates& est,
                      const FixedParams& p) {
  p.require_valid();
  const double gamma = sp.gamma_curr;
  const double growth = std::sqrt(1.0 / p.q + sp.rho);
  const double g2l2 = gamma * gamma * est.big_l * est.big_l;
  const double bracket =
      clamp_pos(g2l2 + 2.0 * gamma * est.ell * (p.r - 1.0) - (2.0 * p.r - 1.0));
  double curb = kInf;
  if (bracket > 0.0) curb = std::sqrt((1.0 - p.r / p.q) / bracket);
  return gamma * std::min(growth, curb);
}

double general_stepsize(const StepsizePair& sp, const CurvatureEstimates& est,
                        const ScheduleParams& sched_prev,
                        const ScheduleParams& sched_next) {
  auto violations =
      validate_schedule_step(sched_prev, sched_next, sp.gamma_curr, est.ell);
  if (!violations.empty()) {
    std::string msg = "general_stepsize: invalid schedule step:";
    for (const auto& v : violations) msg += " [" + v + "]";
    throw std::invalid_argument(msg);
  }
  const double gamma = sp.gamma_curr;
  const double pi = sched_prev.pi_k;
  const double xi = sched_prev.xi_k;
  const double pi_next = sched_next.pi_k;
  const double r_next = sched_next.r_k();
  const double growth = std::sqrt((1.0 + pi * sp.rho) / pi_next);
  const double g2l2 = gamma * gamma * est.big_l * est.big_l;
  const double bracket = clamp_pos(g2l2 + 2.0 * gamma * est.ell * (r_next - 1.0) -
                                   (2.0 * r_next - 1.0));
  double curb = kInf;
  if (bracket > 0.0) curb = std::sqrt((r_next / pi_next) * xi / bracket);
  return gamma * std::min(growth, curb);
}

std::vector<std::string> validate_schedule_step(const ScheduleParams& sched_prev,
                                                const ScheduleParams& sched_next,
                                                double gamma_k, double ell_k) {
  std::vector<std::string> out;
  if (!(sched_next.pi_min > 0.5))
    out.push_back("pi_min must exceed one-half");
  if (!(sched_next.pi_min <= sched_next.pi_max))
    out.push_back("pi_min above pi_max");
  if (!(sched_next.xi_min > 0.0 &&
        sched_next.xi_min <= 2.0 * sched_next.pi_min - 1.0))
    out.push_back("xi_min outside (0, 2 pi_min - 1]");
  if (!(sched_next.xi_k >= sched_next.xi_min))
    out.push_back("xi below xi_min");
  if (!(sched_next.r_k() >= 0.5))
    out.push_back("r below one-half");
  if (!(sched_next.pi_k >= sched_next.pi_min))
    out.push_back("pi below pi_min");
  const double gate = (gamma_k * ell_k >= 1.0) ? 1.0 : 0.0;
  const double pi_cap = std::min(sched_next.pi_max, sched_prev.pi_k + gate);
  if (!(sched_next.pi_k <= pi_cap))
    out.push_back(gate == 0.0 && sched_next.pi_k <= sched_next.pi_max
                      ? "pi growth gate"
                      : "pi above pi_max cap");
  return out;
}

double adapg_baseline_stepsize(const StepsizePair& sp,
                               const CurvatureEstimates& est) {
  const double gamma = sp.gamma_curr;
  const double growth = std::sqrt(1.0 + sp.rho);
  const double bracket = clamp_pos(gamma * gamma * est.big_l * est.big_l -
                                   gamma * est.ell);
  double curb = kInf;
  if (bracket > 0.0) curb = 1.0 / (2.0 * std::sqrt(bracket));
  return gamma * std::min(growth, curb);
}

double adapg_mm_stepsize(const StepsizePair& sp, const CurvatureEstimates& est) {
  const double gamma = sp.gamma_curr;
  const double growth = gamma * std::sqrt(1.0 + sp.rho);
  if (est.big_l == 0.0) return growth;
  return std::min(growth, 1.0 / (std::sqrt(2.0) * est.big_l));
}

ShrinkFactor m_epsilon(double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("m_epsilon: eps must be positive");
  ShrinkFactor out;
  double rho = std::sqrt(eps);
  while (rho < 1.0) {
    ++out.t_eps;
    out.m *= rho;
    rho = std::sqrt(eps + rho);
  }
  return out;
}

double general_stepsize_lower_bound(double pi_max, double xi_min, double r_min,
                                    double big_l) {
  if (!(pi_max > 0.5) || !(xi_min > 0.0) || !(r_min >= 0.5) || !(big_l > 0.0))
    throw std::invalid_argument("general_stepsize_lower_bound: parameter domain");
  return m_epsilon(1.0 / pi_max).m * std::sqrt(xi_min * r_min / pi_max) / big_l;
}

double stepsize_lower_bound(const FixedParams& p, double big_l) {
  p.require_valid();
  if (!(big_l > 0.0))
    throw std::invalid_argument("stepsize_lower_bound: L must be positive");
  if (!(p.q <= 0.5 * (3.0 + std::sqrt(5.0))))
    throw std::invalid_argument(
        "stepsize_lower_bound: q above (3+sqrt 5)/2, use the general bound");
  return std::sqrt((1.0 - p.r / p.q) / std::max(1.0, p.q)) / big_l;
}

long stepsize_bound_burn_in(double q_or_pi_max, double gamma0, double big_l) {
  const double arg = 1.0 / (gamma0 * big_l);
  if (arg <= 1.0) return 0;
  const double steps = std::log(arg) / std::log1p(1.0 / q_or_pi_max);
  return 2 * static_cast<long>(std::ceil(steps));
}

const std::vector<Preset>& table1_presets() {
  static const std::vector<Preset> presets = {
      {"10/9,5/6", 10.0 / 9.0, 5.0 / 6.0, 1.5 * std::sqrt(0.1)},
      {"8/5,24/25", 8.0 / 5.0, 24.0 / 25.0, 0.5},
      {"5/3,5/6", 5.0 / 3.0, 5.0 / 6.0, std::sqrt(0.3)},
      {"3/2,3/4", 1.5, 0.75, 1.0 / std::sqrt(3.0)},
      {"1,1/2", 1.0, 0.5, 1.0 / std::sqrt(2.0)},
      {"5/2,1", 2.5, 1.0, std::sqrt(6.0) / 5.0},
  };
  return presets;
}

}  // namespace adaprox
