#pragma once

#include <map>

#include <nlohmann/json.hpp>

#include "adaprox/diagnostics.hpp"
#include "adaprox/problems_io.hpp"

namespace adaprox {

/// A solver run bound to a problem; produced by the registry from a spec
/// string such as "adapg:1.5:0.75", "pg-ls:1.3" or "nesterov".
using SolverRunner =
    std::function<SolveResult(const CompositeProblem&, const Vector& x_init,
                              double gamma0, const StoppingRule&,
                              const SolveOptions&)>;
using SolverFactory = std::function<SolverRunner(const std::vector<double>& args)>;

/// String-keyed registry so new variants can be added without CLI changes.
std::map<std::string, SolverFactory>& solver_registry();

/// Parses "name[:arg[:arg...]]" and instantiates the runner.
SolverRunner make_solver(const std::string& spec);

struct RunConfig {
  std::string problem_class;  // "lasso" | "logreg" | "cubic"
  // lasso generator parameters
  Eigen::Index n = 200, m = 100, s = 10;
  double lambda = 0.1;
  // logreg / cubic dataset parameters
  std::string data_path;
  double lambda1 = -1.0;  // < 0: anchored at 0.01 * |grad f(0)|_inf
  double sigma = 1.0;
  // shared
  std::uint64_t seed = 0;
  double gamma0 = 1.0;
  std::vector<std::string> solvers;
  StoppingRule stop;
  std::string out_dir = "bench-out";
  bool diagnostics = false;

  /// Loads keys from a JSON config file; unknown keys are rejected. Values
  /// already set by flags are supposed to be re-applied by the caller
  /// afterwards (flags win).
  static RunConfig from_json_file(const std::string& path);
  void validate() const;
};

struct BenchEntry {
  std::string solver;
  long iterations = 0;
  bool converged = false;
  double final_objective = 0.0;
  double final_residual = 0.0;
  double wall_time = 0.0;
  long iterations_to_tol = -1;
  nlohmann::json certificate_report;  // null when diagnostics are off
};

struct BenchSummary {
  std::vector<BenchEntry> entries;
  std::string summary_path;
};

/// Builds the configured problem and zero initial point.
CompositeProblem build_problem(const RunConfig& config, Vector* x_init);

/// Runs every configured solver on the configured problem; writes one trace
/// CSV per solver plus summary.json under config.out_dir (files are written
/// atomically; partial outputs are removed on error).
BenchSummary run_benchmark(const RunConfig& config);

}  // namespace adaprox
