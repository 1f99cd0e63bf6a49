#include "adaprox/trace_io.hpp"

#include <fstream>
#include <iomanip>

#include <nlohmann/json.hpp>

namespace adaprox {

void write_trace_csv(const SolveResult& run, std::ostream& out) {
  out << "k,gamma,objective,residual,ell,big_l,cumulative_oracle_calls,wall_time\n";
  out << std::setprecision(17);
  for (const auto& r : run.trace)
    out << r.k << ',' << r.gamma << ',' << r.objective << ',' << r.residual
        << ',' << r.ell << ',' << r.big_l << ',' << (r.grad_evals + r.prox_evals)
        << ',' << r.wall_time << '\n';
}

void write_trace_csv(const SolveResult& run, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write trace CSV: " + path);
  write_trace_csv(run, out);
}

namespace {

nlohmann::json vec_to_json(const Vector& v) {
  nlohmann::json j = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(v[i]);
  return j;
}

Vector vec_from_json(const nlohmann::json& j) {
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i)
    v[i] = j[static_cast<std::size_t>(i)].get<double>();
  return v;
}

}  // namespace

void write_trace_json(const SolveResult& run, const std::string& path) {
  nlohmann::json j;
  j["format_version"] = 1;
  j["solver"] = run.solver_id;
  j["converged"] = run.converged;
  j["x"] = vec_to_json(run.x);
  nlohmann::json recs = nlohmann::json::array();
  for (const auto& r : run.trace) {
    nlohmann::json rec = {
        {"k", r.k},           {"gamma", r.gamma},
        {"rho", r.rho},       {"objective", r.objective},
        {"step_norm", r.step_norm}, {"residual", r.residual},
        {"ell", r.ell},       {"big_l", r.big_l},
        {"grad_evals", r.grad_evals}, {"prox_evals", r.prox_evals},
        {"wall_time", r.wall_time},
    };
    if (!std::isnan(r.pi)) {
      rec["pi"] = r.pi;
      rec["xi"] = r.xi;
    }
    if (r.x.size() > 0) {
      rec["x"] = vec_to_json(r.x);
      rec["grad"] = vec_to_json(r.grad);
    }
    recs.push_back(std::move(rec));
  }
  j["trace"] = std::move(recs);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write trace JSON: " + path);
  out << j.dump() << '\n';
}

SolveResult read_trace_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read trace JSON: " + path);
  nlohmann::json j = nlohmann::json::parse(in);
  if (j.at("format_version").get<int>() != 1)
    throw std::runtime_error("unsupported trace format version");
  SolveResult run;
  run.solver_id = j.at("solver").get<std::string>();
  run.converged = j.at("converged").get<bool>();
  run.x = vec_from_json(j.at("x"));
  for (const auto& rec : j.at("trace")) {
    IterationRecord r;
    r.k = rec.at("k").get<long>();
    r.gamma = rec.at("gamma").get<double>();
    r.rho = rec.at("rho").get<double>();
    r.objective = rec.at("objective").get<double>();
    r.step_norm = rec.at("step_norm").get<double>();
    r.residual = rec.at("residual").get<double>();
    r.ell = rec.at("ell").get<double>();
    r.big_l = rec.at("big_l").get<double>();
    r.grad_evals = rec.at("grad_evals").get<long>();
    r.prox_evals = rec.at("prox_evals").get<long>();
    r.wall_time = rec.at("wall_time").get<double>();
    if (rec.contains("pi")) {
      r.pi = rec.at("pi").get<double>();
      r.xi = rec.at("xi").get<double>();
    }
    if (rec.contains("x")) {
      r.x = vec_from_json(rec.at("x"));
      r.grad = vec_from_json(rec.at("grad"));
    }
    run.trace.push_back(std::move(r));
  }
  return run;
}

}  // namespace adaprox
