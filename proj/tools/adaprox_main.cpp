// Command-line front end: solver/problem configuration, benchmark runs,
// trace certification and instance generation.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "adaprox/bench.hpp"
#include "adaprox/trace_io.hpp"

namespace {

using namespace adaprox;

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

struct ProblemFlags {
  std::string config_path;
  long n = 200, m = 100, s = 10;
  double lambda = 0.1;
  std::string data_path;
  double lambda1 = -1.0;
  double sigma = 1.0;
  std::uint64_t seed = 0;
  double gamma0 = 1.0;
  double tol = 1e-8;
  long max_iters = 100000;
  std::string out_dir;
  bool diagnostics = false;
};

void add_problem_flags(CLI::App* cmd, ProblemFlags* f) {
  cmd->add_option("--config", f->config_path, "JSON config file (flags win)");
  cmd->add_option("--n", f->n, "variables (lasso)");
  cmd->add_option("--m", f->m, "samples (lasso)");
  cmd->add_option("--s", f->s, "planted support size (lasso)");
  cmd->add_option("--lambda", f->lambda, "l1 weight (lasso)");
  cmd->add_option("--data", f->data_path, "LIBSVM dataset path (logreg/cubic)");
  cmd->add_option("--lambda1", f->lambda1,
                  "l1 weight (logreg); default 0.01*|grad f(0)|_inf");
  cmd->add_option("--sigma", f->sigma, "cubic regularization weight");
  cmd->add_option("--seed", f->seed, "generator seed");
  cmd->add_option("--gamma0", f->gamma0, "initial stepsize");
  cmd->add_option("--tol", f->tol, "fixed-point residual tolerance");
  cmd->add_option("--max-iters", f->max_iters, "iteration budget");
  cmd->add_option("--out", f->out_dir, "output directory");
  cmd->add_flag("--diagnostics", f->diagnostics, "run certificate checks");
}

RunConfig to_config(const std::string& problem_class, const ProblemFlags& f,
                    CLI::App* cmd, const std::vector<std::string>& solvers) {
  RunConfig c;
  if (!f.config_path.empty()) c = RunConfig::from_json_file(f.config_path);
  c.problem_class = problem_class;
  auto used = [&](const std::string& flag) { return cmd->count(flag) > 0; };
  if (used("--n") || c.n == 0) c.n = f.n;
  if (used("--m")) c.m = f.m;
  if (used("--s")) c.s = f.s;
  if (used("--lambda")) c.lambda = f.lambda;
  if (used("--data") || c.data_path.empty()) c.data_path = f.data_path;
  if (used("--lambda1")) c.lambda1 = f.lambda1;
  if (used("--sigma")) c.sigma = f.sigma;
  if (used("--seed")) c.seed = f.seed;
  if (used("--gamma0")) c.gamma0 = f.gamma0;
  if (used("--tol")) c.stop.tol_fixedpoint = f.tol;
  if (used("--max-iters")) c.stop.max_iters = f.max_iters;
  if (used("--diagnostics")) c.diagnostics = f.diagnostics;
  if (!solvers.empty()) c.solvers = solvers;
  if (used("--out")) c.out_dir = f.out_dir;
  if (const char* env = std::getenv("ADAPROX_OUT_DIR"); env && *env)
    c.out_dir = env;  // environment override
  if (c.out_dir.empty()) c.out_dir = "bench-out";
  return c;
}

int cmd_bench(const std::string& problem_class, const ProblemFlags& flags,
              CLI::App* cmd, const std::string& solvers_csv) {
  RunConfig config = to_config(problem_class, flags, cmd, split_csv(solvers_csv));
  BenchSummary summary = run_benchmark(config);
  std::cout << "problem: " << config.problem_class << "\n";
  for (const auto& e : summary.entries) {
    std::cout << "  " << e.solver << ": iters=" << e.iterations
              << " to_tol=" << e.iterations_to_tol
              << " final_obj=" << e.final_objective
              << " residual=" << e.final_residual
              << " wall=" << e.wall_time << "s";
    if (!e.certificate_report.is_null())
      std::cout << " certificates="
                << (e.certificate_report.value("all_pass", false) ? "pass"
                                                                  : "check");
    std::cout << "\n";
  }
  std::cout << "summary: " << summary.summary_path << "\n";
  return 0;
}

int cmd_solve(const std::string& problem_class, const ProblemFlags& flags,
              CLI::App* cmd, const std::string& solver_spec) {
  RunConfig config = to_config(problem_class, flags, cmd, {solver_spec});
  config.validate();
  std::filesystem::create_directories(config.out_dir);

  Vector x_init;
  CompositeProblem problem = build_problem(config, &x_init);
  SolveOptions opts;
  opts.record_vectors = config.diagnostics;
  SolveResult run = make_solver(solver_spec)(problem, x_init, config.gamma0,
                                             config.stop, opts);

  const auto base = std::filesystem::path(config.out_dir) / "trace";
  write_trace_csv(run, base.string() + ".csv");
  std::cout << "iterations: " << run.trace.size()
            << "\nfinal objective: " << run.trace.back().objective
            << "\nfinal residual: " << run.trace.back().residual
            << "\nconverged: " << (run.converged ? "yes" : "no") << "\n";
  if (config.diagnostics) {
    write_trace_json(run, base.string() + ".json");
    std::cout << "trace with iterates: " << base.string() << ".json\n";
  }
  std::cout << "trace: " << base.string() << ".csv\n";
  return 0;
}

int cmd_check(const std::string& trace_path, const std::string& report_path) {
  SolveResult run = read_trace_json(trace_path);
  if (run.trace.empty()) throw std::runtime_error("trace is empty");

  CheckParams params;
  // Schedule bounds from the recorded parameters (constant schedules record
  // them exactly; for time-varying ones this recovers the observed range).
  double pi_max = -1.0, xi_min = kInf;
  for (const auto& r : run.trace) {
    if (!std::isnan(r.pi)) pi_max = std::max(pi_max, r.pi);
    if (!std::isnan(r.xi)) xi_min = std::min(xi_min, r.xi);
  }
  if (pi_max > 0.0) {
    params.pi_max = pi_max;
    params.xi_min = xi_min;
  }

  // Reference: the best recorded iterate.
  std::size_t best = 0;
  for (std::size_t i = 1; i < run.trace.size(); ++i)
    if (run.trace[i].objective < run.trace[best].objective) best = i;
  params.phi_star = run.trace[best].objective;
  Vector x_ref = run.trace[best].x.size() > 0 ? run.trace[best].x : run.x;

  CompositeProblem unused;  // oracles are not needed once phi_star is pinned
  unused.dimension = x_ref.size();
  CertificateReport report = check_trace(run, unused, x_ref, params);
  std::cout << report.to_table();
  if (!report_path.empty()) {
    std::ofstream out(report_path);
    out << report.to_json().dump(2) << '\n';
    std::cout << "report: " << report_path << "\n";
  }
  return report.all_pass() ? 0 : 1;
}

int cmd_gen(long n, long m, long s, double lambda, std::uint64_t seed,
            const std::string& out_dir) {
  LassoInstance inst = generate_lasso(n, m, s, lambda, seed);
  save_lasso(inst, out_dir, seed);
  std::cout << "instance written to " << out_dir
            << " (certificate: " << (inst.certify() ? "ok" : "FAILED") << ")\n";
  return inst.certify() ? 0 : 1;
}

int cmd_presets() {
  std::cout << "q, r combinations with stepsize floor gamma_min * L:\n";
  for (const auto& p : table1_presets())
    std::cout << "  " << p.name << ": q=" << p.q << " r=" << p.r
              << " gamma_min*L=" << p.gamma_min_times_l << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"adaptive proximal gradient solvers and benchmark harness"};
  app.require_subcommand(1);

  // bench
  auto* bench = app.add_subcommand("bench", "run a solver comparison");
  std::string bench_class, bench_solvers = "adapg:1.5:0.75";
  ProblemFlags bench_flags;
  bench->add_option("class", bench_class, "problem class: lasso|logreg|cubic")
      ->required();
  bench->add_option("--solvers", bench_solvers, "comma-separated solver specs");
  add_problem_flags(bench, &bench_flags);

  // solve
  auto* solve = app.add_subcommand("solve", "run a single solver");
  std::string solve_class, solve_solver = "adapg:1.5:0.75";
  ProblemFlags solve_flags;
  solve->add_option("class", solve_class, "problem class: lasso|logreg|cubic")
      ->required();
  solve->add_option("--solver", solve_solver, "solver spec");
  add_problem_flags(solve, &solve_flags);

  // check
  auto* check = app.add_subcommand("check", "certify a saved trace");
  std::string check_trace_path, check_report;
  check->add_option("trace", check_trace_path, "trace JSON path")->required();
  check->add_option("--report", check_report, "write JSON report here");

  // gen
  auto* gen = app.add_subcommand("gen", "generate a benchmark instance");
  std::string gen_class = "lasso", gen_out = "instance";
  long gen_n = 200, gen_m = 100, gen_s = 10;
  double gen_lambda = 0.1;
  std::uint64_t gen_seed = 0;
  gen->add_option("class", gen_class, "instance class (lasso)");
  gen->add_option("--n", gen_n);
  gen->add_option("--m", gen_m);
  gen->add_option("--s", gen_s);
  gen->add_option("--lambda", gen_lambda);
  gen->add_option("--seed", gen_seed);
  gen->add_option("--out", gen_out, "output directory");

  // presets
  app.add_subcommand("presets", "print suggested (q, r) combinations");

  CLI11_PARSE(app, argc, argv);

  try {
    if (bench->parsed()) return cmd_bench(bench_class, bench_flags, bench, bench_solvers);
    if (solve->parsed()) return cmd_solve(solve_class, solve_flags, solve, solve_solver);
    if (check->parsed()) return cmd_check(check_trace_path, check_report);
    if (gen->parsed()) {
      if (gen_class != "lasso")
        throw std::invalid_argument("unknown instance class: " + gen_class);
      return cmd_gen(gen_n, gen_m, gen_s, gen_lambda, gen_seed, gen_out);
    }
    return cmd_presets();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
