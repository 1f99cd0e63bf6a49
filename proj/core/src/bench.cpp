#include "adaprox/bench.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "adaprox/trace_io.hpp"

namespace adaprox {

namespace fs = std::filesystem;

std::map<std::string, SolverFactory>& solver_registry() {
  static std::map<std::string, SolverFactory> registry = [] {
    std::map<std::string, SolverFactory> r;
    r["adapg"] = [](const std::vector<double>& args) -> SolverRunner {
      FixedParams p;
      if (args.size() >= 2) p = {args[0], args[1]};
      else if (!args.empty())
        throw std::invalid_argument("adapg takes zero or two arguments (q, r)");
      p.require_valid();
      return [p](const CompositeProblem& prob, const Vector& x0, double gamma0,
                 const StoppingRule& stop, const SolveOptions& opts) {
        return run_adapg(prob, x0, gamma0, p, stop, opts);
      };
    };
    r["general"] = [](const std::vector<double>& args) -> SolverRunner {
      FixedParams p;
      if (args.size() >= 2) p = {args[0], args[1]};
      p.require_valid();
      return [p](const CompositeProblem& prob, const Vector& x0, double gamma0,
                 const StoppingRule& stop, const SolveOptions& opts) {
        const ScheduleParams sched = ScheduleParams::constant(p);
        return run_general(
            prob, x0, gamma0, sched,
            [](long, double, double, const ScheduleParams& cur) {
              return std::make_pair(cur.pi_k, cur.xi_k);
            },
            stop, opts);
      };
    };
    r["pg-ls"] = [](const std::vector<double>& args) -> SolverRunner {
      const double b = args.empty() ? 1.5 : args[0];
      return [b](const CompositeProblem& prob, const Vector& x0, double gamma0,
                 const StoppingRule& stop, const SolveOptions& opts) {
        return run_pg_backtracking(prob, x0, gamma0, b, stop, opts);
      };
    };
    r["nesterov"] = [](const std::vector<double>& args) -> SolverRunner {
      const double l_arg = args.empty() ? -1.0 : args[0];
      return [l_arg](const CompositeProblem& prob, const Vector& x0, double,
                     const StoppingRule& stop, const SolveOptions& opts) {
        const double l_f = l_arg > 0.0 ? l_arg : prob.lipschitz_hint;
        if (!(l_f > 0.0))
          throw std::invalid_argument(
              "nesterov needs L_f (no problem Lipschitz bound available)");
        return run_nesterov(prob, x0, l_f, stop, opts);
      };
    };
    r["adapg-baseline"] = [](const std::vector<double>&) -> SolverRunner {
      return [](const CompositeProblem& prob, const Vector& x0, double gamma0,
                const StoppingRule& stop, const SolveOptions& opts) {
        return run_adapg_baseline(prob, x0, gamma0, stop, opts);
      };
    };
    r["adapg-mm"] = [](const std::vector<double>&) -> SolverRunner {
      return [](const CompositeProblem& prob, const Vector& x0, double gamma0,
                const StoppingRule& stop, const SolveOptions& opts) {
        return run_adapg_mm(prob, x0, gamma0, stop, opts);
      };
    };
    return r;
  }();
  return registry;
}

namespace {

std::pair<std::string, std::vector<double>> parse_spec(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ':')) parts.push_back(part);
  if (parts.empty()) throw std::invalid_argument("empty solver spec");
  std::vector<double> args;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    try {
      std::size_t used = 0;
      args.push_back(std::stod(parts[i], &used));
      if (used != parts[i].size()) throw std::invalid_argument("trailing junk");
    } catch (const std::exception&) {
      throw std::invalid_argument("solver spec '" + spec +
                                  "': bad numeric argument '" + parts[i] + "'");
    }
  }
  return {parts[0], std::move(args)};
}

std::string sanitize(const std::string& s) {
  std::string out = s;
  for (char& c : out)
    if (c == ':' || c == '/' || c == '.') c = '-';
  return out;
}

}  // namespace

SolverRunner make_solver(const std::string& spec) {
  auto [name, args] = parse_spec(spec);
  auto& reg = solver_registry();
  auto it = reg.find(name);
  if (it == reg.end()) throw std::invalid_argument("unknown solver: " + name);
  return it->second(args);
}

RunConfig RunConfig::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file: " + path);
  nlohmann::json j = nlohmann::json::parse(in);
  RunConfig c;
  for (const auto& [key, val] : j.items()) {
    if (key == "problem") c.problem_class = val.get<std::string>();
    else if (key == "n") c.n = val.get<Eigen::Index>();
    else if (key == "m") c.m = val.get<Eigen::Index>();
    else if (key == "s") c.s = val.get<Eigen::Index>();
    else if (key == "lambda") c.lambda = val.get<double>();
    else if (key == "data") c.data_path = val.get<std::string>();
    else if (key == "lambda1") c.lambda1 = val.get<double>();
    else if (key == "sigma") c.sigma = val.get<double>();
    else if (key == "seed") c.seed = val.get<std::uint64_t>();
    else if (key == "gamma0") c.gamma0 = val.get<double>();
    else if (key == "solvers") c.solvers = val.get<std::vector<std::string>>();
    else if (key == "tol") c.stop.tol_fixedpoint = val.get<double>();
    else if (key == "max_iters") c.stop.max_iters = val.get<long>();
    else if (key == "out_dir") c.out_dir = val.get<std::string>();
    else if (key == "diagnostics") c.diagnostics = val.get<bool>();
    else throw std::invalid_argument("config: unknown key '" + key + "'");
  }
  return c;
}

void RunConfig::validate() const {
  if (problem_class != "lasso" && problem_class != "logreg" &&
      problem_class != "cubic")
    throw std::invalid_argument("unknown problem class: " + problem_class);
  if (solvers.empty()) throw std::invalid_argument("no solvers configured");
  stop.require_valid();
  if (!(gamma0 > 0.0)) throw std::invalid_argument("gamma0 must be positive");
  for (const auto& s : solvers) make_solver(s);  // surfaces bad specs early
}

CompositeProblem build_problem(const RunConfig& config, Vector* x_init) {
  if (config.problem_class == "lasso") {
    LassoInstance inst = generate_lasso(config.n, config.m, config.s,
                                        config.lambda, config.seed);
    *x_init = Vector::Zero(config.n);
    return inst.to_problem();
  }
  if (config.problem_class == "logreg") {
    LabeledDataset ds = load_libsvm(config.data_path);
    double lambda1 = config.lambda1;
    if (lambda1 < 0.0) {
      CompositeProblem bare = build_logistic_problem(ds, 0.0);
      lambda1 = 0.01 * bare.smooth_gradient(Vector::Zero(bare.dimension))
                           .cwiseAbs()
                           .maxCoeff();
    }
    CompositeProblem prob = build_logistic_problem(ds, lambda1);
    *x_init = Vector::Zero(prob.dimension);
    return prob;
  }
  if (config.problem_class == "cubic") {
    LabeledDataset ds = load_libsvm(config.data_path);
    Matrix h;
    Vector c;
    logistic_model_at_zero(ds, &h, &c);
    CompositeProblem prob = build_cubic_problem(h, c, config.sigma);
    *x_init = Vector::Zero(prob.dimension);
    return prob;
  }
  throw std::invalid_argument("unknown problem class: " + config.problem_class);
}

BenchSummary run_benchmark(const RunConfig& config) {
  config.validate();
  fs::create_directories(config.out_dir);

  Vector x_init;
  CompositeProblem problem = build_problem(config, &x_init);

  // High-accuracy reference for the certificate checks.
  Vector x_ref;
  std::optional<double> phi_star;
  if (config.diagnostics) {
    StoppingRule ref_stop;
    ref_stop.max_iters = 10 * config.stop.max_iters;
    ref_stop.tol_fixedpoint = 1e-12;
    SolveOptions ref_opts;
    ref_opts.record_vectors = false;
    SolveResult ref = run_adapg(problem, x_init, config.gamma0,
                                FixedParams{1.5, 0.75}, ref_stop, ref_opts);
    x_ref = ref.x;
    double best = evaluate_objective(problem, ref.x);
    for (const auto& rec : ref.trace) best = std::min(best, rec.objective);
    phi_star = best;
  }

  std::vector<fs::path> written;
  auto cleanup = [&] {
    for (const auto& p : written) {
      std::error_code ec;
      fs::remove(p, ec);
    }
  };

  BenchSummary summary;
  try {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& spec : config.solvers) {
      SolverRunner runner = make_solver(spec);
      SolveOptions opts;
      opts.record_vectors = config.diagnostics;
      SolveResult run =
          runner(problem, x_init, config.gamma0, config.stop, opts);

      const fs::path csv_path =
          fs::path(config.out_dir) /
          (config.problem_class + "_" + sanitize(spec) + ".csv");
      const fs::path tmp = csv_path.string() + ".tmp";
      write_trace_csv(run, tmp.string());
      fs::rename(tmp, csv_path);
      written.push_back(csv_path);

      BenchEntry entry;
      entry.solver = spec;
      entry.iterations = static_cast<long>(run.trace.size());
      entry.converged = run.converged;
      entry.final_objective = run.trace.back().objective;
      entry.final_residual = run.trace.back().residual;
      entry.wall_time = run.trace.back().wall_time;
      for (const auto& rec : run.trace)
        if (rec.residual <= config.stop.tol_fixedpoint) {
          entry.iterations_to_tol = rec.k;
          break;
        }
      if (config.diagnostics) {
        auto [name, args] = parse_spec(spec);
        CheckParams cp;
        if ((name == "adapg" || name == "general") && args.size() >= 2)
          cp = CheckParams::for_fixed(FixedParams{args[0], args[1]});
        cp.phi_star = phi_star;
        entry.certificate_report =
            check_trace(run, problem, x_ref, cp).to_json();
      }

      nlohmann::json je = {
          {"solver", entry.solver},
          {"iterations", entry.iterations},
          {"converged", entry.converged},
          {"final_objective", entry.final_objective},
          {"final_residual", entry.final_residual},
          {"wall_time", entry.wall_time},
          {"iterations_to_tol", entry.iterations_to_tol},
      };
      if (config.diagnostics) je["certificates"] = entry.certificate_report;
      entries.push_back(std::move(je));
      summary.entries.push_back(std::move(entry));
    }

    nlohmann::json js = {
        {"schema_version", 1},
        {"problem", config.problem_class},
        {"seed", config.seed},
        {"gamma0", config.gamma0},
        {"tol", config.stop.tol_fixedpoint},
        {"max_iters", config.stop.max_iters},
        {"results", std::move(entries)},
    };
    const fs::path sum_path = fs::path(config.out_dir) / "summary.json";
    const fs::path tmp = sum_path.string() + ".tmp";
    std::ofstream out(tmp);
    out << js.dump(2) << '\n';
    out.close();
    fs::rename(tmp, sum_path);
    summary.summary_path = sum_path.string();
  } catch (...) {
    cleanup();
    throw;
  }
  return summary;
}

}  // namespace adaprox
