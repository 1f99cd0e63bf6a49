#include "adaprox/diagnostics.hpp"

#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

namespace adaprox {

namespace {

const char* status_str(CheckStatus s) {
  switch (s) {
    case CheckStatus::kPass: return "pass";
    case CheckStatus::kFail: return "FAIL";
    default: return "n/a";
  }
}

bool has_schedule(const SolveResult& run) {
  return run.solver_id == "adapg" || run.solver_id == "general";
}

bool plain_pg(const SolveResult& run) {
  // Methods of the plain form x+ = prox(x - gamma grad f(x)); Nesterov's
  // extrapolated iterates are not.
  return run.solver_id != "nesterov";
}

bool has_vectors(const SolveResult& run) {
  return !run.trace.empty() && run.trace.front().x.size() > 0;
}

}  // namespace

long CertificateReport::first_failure(const std::vector<CheckStatus>& flags) {
  for (std::size_t i = 0; i < flags.size(); ++i)
    if (flags[i] == CheckStatus::kFail) return static_cast<long>(i);
  return -1;
}

bool CertificateReport::all_pass() const {
  for (const auto* f : {&fne, &lyapunov, &curvature_order, &stepsize_cap,
                        &lower_bound, &rate_envelope})
    if (first_failure(*f) >= 0) return false;
  return true;
}

nlohmann::json CertificateReport::to_json() const {
  auto dump = [](const std::vector<CheckStatus>& flags) {
    nlohmann::json j;
    j["first_failure"] = first_failure(flags);
    bool applicable = false;
    for (auto s : flags)
      if (s != CheckStatus::kNotApplicable) applicable = true;
    j["applicable"] = applicable;
    std::string bits;
    bits.reserve(flags.size());
    for (auto s : flags)
      bits += s == CheckStatus::kPass ? 'P' : (s == CheckStatus::kFail ? 'F' : '-');
    j["flags"] = bits;
    return j;
  };
  nlohmann::json j;
  j["fne_inequality"] = dump(fne);
  j["lyapunov_decrease"] = dump(lyapunov);
  j["curvature_order"] = dump(curvature_order);
  j["stepsize_cap"] = dump(stepsize_cap);
  j["stepsize_lower_bound"] = dump(lower_bound);
  j["rate_envelope"] = dump(rate_envelope);
  j["reference_note"] = reference_note;
  j["atol"] = atol;
  j["rtol"] = rtol;
  j["all_pass"] = all_pass();
  return j;
}

std::string CertificateReport::to_table() const {
  std::ostringstream os;
  auto row = [&](const char* name, const std::vector<CheckStatus>& flags) {
    bool applicable = false;
    for (auto s : flags)
      if (s != CheckStatus::kNotApplicable) applicable = true;
    os << "  " << name << ": ";
    if (!applicable) {
      os << "n/a\n";
      return;
    }
    const long ff = first_failure(flags);
    if (ff < 0)
      os << "all pass\n";
    else
      os << "first failure at k=" << ff << "\n";
  };
  os << "certificate report (atol=" << atol << ", rtol=" << rtol << ")\n";
  row("fne_inequality     ", fne);
  row("lyapunov_decrease  ", lyapunov);
  row("curvature_order    ", curvature_order);
  row("stepsize_cap       ", stepsize_cap);
  row("stepsize_lower_bnd ", lower_bound);
  row("rate_envelope      ", rate_envelope);
  if (!reference_note.empty()) os << "  note: " << reference_note << "\n";
  return os.str();
}

double lyapunov_value(double dist_to_ref, double p_prev, double gamma,
                      double pi_rho, double xi, double step_norm) {
  return 0.5 * dist_to_ref * dist_to_ref + gamma * (1.0 + pi_rho) * p_prev +
         0.5 * xi * step_norm * step_norm;
}

double lyapunov_at(const SolveResult& run, std::size_t k, const Vector& x_ref,
                   double phi_ref) {
  if (k < 1 || k >= run.trace.size())
    throw std::invalid_argument("lyapunov_at: index out of range");
  const IterationRecord& rec = run.trace[k];
  const IterationRecord& prev = run.trace[k - 1];
  if (rec.x.size() == 0)
    throw std::invalid_argument("lyapunov_at: trace has no recorded iterates");
  if (std::isnan(rec.pi) || std::isnan(rec.xi))
    throw std::invalid_argument("lyapunov_at: trace has no schedule parameters");
  return lyapunov_value((rec.x - x_ref).norm(), prev.objective - phi_ref,
                        rec.gamma, rec.pi * rec.rho, rec.xi, rec.step_norm);
}

CertificateReport check_trace(const SolveResult& run,
                              const CompositeProblem& problem,
                              const Vector& x_ref, const CheckParams& params) {
  const std::size_t n = run.trace.size();
  CertificateReport rep;
  rep.atol = params.atol;
  rep.rtol = params.rtol;
  auto init = [&](std::vector<CheckStatus>& v) {
    v.assign(n, CheckStatus::kNotApplicable);
  };
  init(rep.fne);
  init(rep.lyapunov);
  init(rep.curvature_order);
  init(rep.stepsize_cap);
  init(rep.lower_bound);
  init(rep.rate_envelope);
  if (n == 0) return rep;

  auto tol = [&](double magnitude) {
    return params.atol + params.rtol * (1.0 + std::abs(magnitude));
  };

  // Curvature ordering 0 <= ell <= L (<= L_ref).
  if (plain_pg(run)) {
    for (std::size_t k = 1; k < n; ++k) {
      const auto& r = run.trace[k];
      bool ok = r.ell >= -tol(r.big_l) && r.ell <= r.big_l + tol(r.big_l);
      if (params.l_ref > 0.0) ok = ok && r.big_l <= params.l_ref + tol(params.l_ref);
      rep.curvature_order[k] = ok ? CheckStatus::kPass : CheckStatus::kFail;
    }
  }

  // FNE-like inequality; needs iterate and gradient vectors.
  if (plain_pg(run) && has_vectors(run)) {
    for (std::size_t k = 1; k + 1 < n; ++k) {
      const auto& prev = run.trace[k - 1];
      const auto& cur = run.trace[k];
      const auto& next = run.trace[k + 1];
      const double gamma_k = cur.gamma;
      const Vector d = (prev.x - gamma_k * prev.grad) - (cur.x - gamma_k * cur.grad);
      const Vector s = cur.x - next.x;
      const double lhs = s.squaredNorm();
      const double mid = next.rho * d.dot(s);
      const double rhs = next.rho * next.rho * d.squaredNorm();
      const double mag = std::max({lhs, std::abs(mid), rhs});
      rep.fne[k] = (lhs <= mid + tol(mag) && mid <= rhs + tol(mag))
                       ? CheckStatus::kPass
                       : CheckStatus::kFail;
    }
  }

  // The remaining families need schedule parameters.
  if (has_schedule(run)) {
    // Stepsize cap by direct substitution (second term inactive when the
    // bracket clamps, 1/0 = inf).
    for (std::size_t k = 0; k + 1 < n; ++k) {
      const auto& cur = run.trace[k];
      const auto& next = run.trace[k + 1];
      const double r_next = next.pi / (1.0 + next.xi);
      const double first = (1.0 + cur.pi * cur.rho) / next.pi;
      // ell/L between (x^{k-1}, x^k) live on record k.
      const double bracket = cur.gamma * cur.gamma * cur.big_l * cur.big_l +
                             2.0 * cur.gamma * cur.ell * (r_next - 1.0) +
                             (1.0 - 2.0 * r_next);
      double second = kInf;
      if (bracket > 0.0) second = cur.xi / ((1.0 + next.xi) * bracket);
      const double cap = std::min(first, second);
      const double rho2 = next.rho * next.rho;
      rep.stepsize_cap[k + 1] =
          (rho2 > 0.0 && rho2 <= cap + tol(cap)) ? CheckStatus::kPass
                                                 : CheckStatus::kFail;
    }

    // Stepsize lower bound for iterations with gamma*ell < 1.
    if (std::isfinite(params.pi_max) && std::isfinite(params.xi_min)) {
      double r_min = kInf;
      for (std::size_t k = 0; k + 1 < n; ++k) {
        const auto& cur = run.trace[k];
        const auto& next = run.trace[k + 1];
        r_min = std::min(r_min, next.pi / (1.0 + next.xi));
        if (!(cur.gamma * cur.ell < 1.0)) continue;
        const double first =
            cur.gamma * std::sqrt(1.0 / params.pi_max + cur.rho);
        const double second =
            cur.big_l > 0.0
                ? std::sqrt(params.xi_min * r_min / params.pi_max) / cur.big_l
                : kInf;
        const double bound = std::min(first, second);
        rep.lower_bound[k + 1] = next.gamma >= bound - tol(bound)
                                     ? CheckStatus::kPass
                                     : CheckStatus::kFail;
      }
    }

    // Lyapunov decrease and the aggregate-stepsize rate envelope need a
    // reference point no worse than every iterate.
    if (has_vectors(run)) {
      const double phi_ref =
          params.phi_star ? *params.phi_star : evaluate_objective(problem, x_ref);
      double phi_min = kInf;
      for (const auto& r : run.trace) phi_min = std::min(phi_min, r.objective);
      if (phi_ref > phi_min + tol(phi_min)) {
        rep.reference_note = "reference insufficient";
      } else {
        const double u1 =
            n > 1 ? lyapunov_at(run, 1, x_ref, phi_ref) : 0.0;
        const double u_tol = params.atol * (1.0 + std::abs(u1));
        double u_prev = u1;
        for (std::size_t k = 2; k < n; ++k) {
          const double u_k = lyapunov_at(run, k, x_ref, phi_ref);
          rep.lyapunov[k] =
              u_k <= u_prev + u_tol ? CheckStatus::kPass : CheckStatus::kFail;
          u_prev = u_k;
        }

        double gamma_sum = 0.0;  // sum_{k=1}^{K+1} gamma_k
        double best_gap = kInf;
        for (std::size_t bigk = 1; bigk + 1 < n; ++bigk) {
          best_gap = std::min(best_gap, run.trace[bigk].objective - phi_ref);
          gamma_sum += run.trace[bigk].gamma;
          const double envelope = u1 / (gamma_sum + run.trace[bigk + 1].gamma);
          rep.rate_envelope[bigk] = best_gap <= envelope + u_tol
                                        ? CheckStatus::kPass
                                        : CheckStatus::kFail;
        }
      }
    }
  }

  return rep;
}

}  // namespace adaprox
