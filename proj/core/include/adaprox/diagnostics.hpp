#pragma once

#include <nlohmann/json_fwd.hpp>

#include "adaprox/solvers.hpp"

namespace adaprox {

enum class CheckStatus { kPass, kFail, kNotApplicable };

/// Per-iteration pass/fail flags for the certificate families evaluated
/// along a trace. Each array has one entry per trace record; entries that
/// cannot be evaluated at that index (boundaries, solver not covered by the
/// certificate) are kNotApplicable.
struct CertificateReport {
  std::vector<CheckStatus> fne;
  std::vector<CheckStatus> lyapunov;
  std::vector<CheckStatus> curvature_order;
  std::vector<CheckStatus> stepsize_cap;
  std::vector<CheckStatus> lower_bound;
  std::vector<CheckStatus> rate_envelope;
  std::string reference_note;  // e.g. "reference insufficient"
  double atol = 0.0, rtol = 0.0;

  static long first_failure(const std::vector<CheckStatus>& flags);
  bool all_pass() const;
  nlohmann::json to_json() const;
  std::string to_table() const;
};

struct CheckParams {
  double atol = 1e-9;
  double rtol = 1e-7;
  // Schedule bounds for the stepsize lower-bound certificate; NaN disables it.
  double pi_max = std::numeric_limits<double>::quiet_NaN();
  double xi_min = std::numeric_limits<double>::quiet_NaN();
  // Known global Lipschitz modulus; <= 0 disables the L_k <= L_ref check.
  double l_ref = -1.0;
  // Objective value at the reference point; computed from x_ref when absent.
  std::optional<double> phi_star;

  static CheckParams for_fixed(const FixedParams& p) {
    CheckParams cp;
    cp.pi_max = p.q;
    cp.xi_min = p.q / p.r - 1.0;
    return cp;
  }
};

/// Merit value (1/2) d^2 + gamma (1 + pi*rho) P_prev + (xi/2) step^2 with
/// d = |x^k - x_ref|, P_prev = phi(x^{k-1}) - phi(x_ref), step = |x^k - x^{k-1}|.
double lyapunov_value(double dist_to_ref, double p_prev, double gamma,
                      double pi_rho, double xi, double step_norm);

/// Same quantity read off a recorded run at index k >= 1 (requires recorded
/// iterate vectors and schedule parameters).
double lyapunov_at(const SolveResult& run, std::size_t k, const Vector& x_ref,
                   double phi_ref);

/// Evaluates all certificate families along a recorded run.
CertificateReport check_trace(const SolveResult& run,
                              const CompositeProblem& problem,
                              const Vector& x_ref, const CheckParams& params);

}  // namespace adaprox
