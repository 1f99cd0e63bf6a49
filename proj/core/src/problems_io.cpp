#include "adaprox/problems_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <memory>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <nlohmann/json.hpp>

#include "adaprox/prox.hpp"

namespace adaprox {

namespace {

bool parse_double(const std::string& tok, double* out) {
  if (tok.empty()) return false;
  const char* begin = tok.c_str();
  char* end = nullptr;
  errno = 0;
  double v = std::strtod(begin, &end);
  if (end != begin + tok.size() || errno == ERANGE || !std::isfinite(v))
    return false;
  *out = v;
  return true;
}

bool parse_index(const std::string& tok, long* out) {
  if (tok.empty()) return false;
  const char* begin = tok.c_str();
  char* end = nullptr;
  errno = 0;
  long v = std::strtol(begin, &end, 10);
  if (end != begin + tok.size() || errno == ERANGE || v < 1) return false;
  *out = v;
  return true;
}

double write_precision(std::ostream& os) {
  os << std::setprecision(17);
  return 0;
}

}  // namespace

LabeledDataset parse_libsvm(std::istream& in,
                            std::optional<Eigen::Index> feature_count) {
  LabeledDataset ds;
  SparseMatrix& a = ds.features;
  std::vector<double> labels;
  std::string line;
  long line_no = 0;
  long max_index = 0;

  while (std::getline(in, line)) {
    ++line_no;
    // Strip comments and skip blank lines.
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.resize(hash);
    std::size_t pos = 0;
    auto skip_ws = [&] {
      while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    };
    auto next_token = [&]() -> std::pair<std::string, long> {
      skip_ws();
      std::size_t start = pos;
      while (pos < line.size() && !std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
      return {line.substr(start, pos - start), static_cast<long>(start) + 1};
    };

    auto [label_tok, label_col] = next_token();
    if (label_tok.empty()) continue;  // blank line

    double label;
    if (!parse_double(label_tok, &label))
      throw ParseError(line_no, label_col, "bad label token '" + label_tok + "'");
    labels.push_back(label);

    long prev_index = 0;
    while (true) {
      auto [tok, col] = next_token();
      if (tok.empty()) break;
      auto colon = tok.find(':');
      if (colon == std::string::npos)
        throw ParseError(line_no, col, "expected <index>:<value>, got '" + tok + "'");
      long index;
      double value;
      if (!parse_index(tok.substr(0, colon), &index))
        throw ParseError(line_no, col, "bad feature index '" + tok.substr(0, colon) + "'");
      if (!parse_double(tok.substr(colon + 1), &value))
        throw ParseError(line_no, col + static_cast<long>(colon) + 1,
                         "bad feature value '" + tok.substr(colon + 1) + "'");
      if (index <= prev_index)
        throw ParseError(line_no, col, "feature indices must be strictly increasing");
      prev_index = index;
      max_index = std::max(max_index, index);
      a.col_indices.push_back(index - 1);  // stored 0-based
      a.values.push_back(value);
    }
    a.row_offsets.push_back(static_cast<std::int64_t>(a.values.size()));
  }

  if (labels.empty()) throw ParseError(line_no, 1, "empty dataset");

  a.rows = static_cast<Eigen::Index>(labels.size());
  a.cols = feature_count.value_or(static_cast<Eigen::Index>(max_index));
  if (a.cols < max_index)
    throw ParseError(1, 1, "feature_count override smaller than max index seen");
  ds.labels = Eigen::Map<Vector>(labels.data(), static_cast<Eigen::Index>(labels.size()));
  a.check_structure();
  return ds;
}

LabeledDataset load_libsvm(const std::string& path,
                           std::optional<Eigen::Index> feature_count) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset file: " + path);
  return parse_libsvm(in, feature_count);
}

void serialize_libsvm(const LabeledDataset& ds, std::ostream& out) {
  write_precision(out);
  const SparseMatrix& a = ds.features;
  for (Eigen::Index i = 0; i < a.rows; ++i) {
    out << ds.labels[i];
    for (std::int64_t p = a.row_offsets[i]; p < a.row_offsets[i + 1]; ++p)
      out << ' ' << (a.col_indices[static_cast<std::size_t>(p)] + 1) << ':'
          << a.values[static_cast<std::size_t>(p)];
    out << '\n';
  }
}

CompositeProblem build_logistic_problem(const LabeledDataset& ds, double lambda1) {
  for (Eigen::Index i = 0; i < ds.labels.size(); ++i)
    if (ds.labels[i] != 1.0 && ds.labels[i] != -1.0)
      throw std::invalid_argument("logistic problem: labels must be +1/-1, got " +
                                  std::to_string(ds.labels[i]) + " at sample " +
                                  std::to_string(i));
  if (lambda1 < 0.0)
    throw std::invalid_argument("logistic problem: lambda1 must be nonnegative");

  const auto a = std::make_shared<SparseMatrix>(ds.features);
  const auto y = std::make_shared<Vector>(ds.labels);
  const double m = static_cast<double>(ds.sample_count());

  CompositeProblem prob;
  prob.dimension = ds.feature_count();
  prob.smooth_value = [a, y, m](const Vector& w) {
    Vector t = a->multiply(w);
    double acc = 0.0;
    for (Eigen::Index i = 0; i < t.size(); ++i) {
      const double u = (*y)[i] * t[i];
      // log(1 + exp(-u)) without overflow
      acc += u >= 0.0 ? std::log1p(std::exp(-u)) : -u + std::log1p(std::exp(u));
    }
    return acc / m;
  };
  prob.smooth_gradient = [a, y, m](const Vector& w) {
    Vector t = a->multiply(w);
    Vector s(t.size());
    for (Eigen::Index i = 0; i < t.size(); ++i) {
      const double u = (*y)[i] * t[i];
      const double sig = u >= 0.0 ? std::exp(-u) / (1.0 + std::exp(-u))
                                  : 1.0 / (1.0 + std::exp(u));
      s[i] = -(*y)[i] * sig / m;
    }
    return a->multiply_transpose(s);
  };
  auto g = make_l1_prox(lambda1);
  prob.nonsmooth_value = g.value;
  prob.nonsmooth_prox = g.prox;
  const double norm_a = a->operator_norm();
  prob.lipschitz_hint = norm_a * norm_a / (4.0 * m);
  return prob;
}

CompositeProblem build_cubic_problem(const Matrix& hessian, const Vector& linear,
                                     double sigma, double symmetry_tol) {
  if (hessian.rows() != hessian.cols() || hessian.rows() != linear.size())
    throw std::invalid_argument("cubic problem: shape mismatch");
  if (!(sigma > 0.0)) throw std::invalid_argument("cubic problem: sigma must be positive");
  const double asym = (hessian - hessian.transpose()).cwiseAbs().maxCoeff();
  if (asym > symmetry_tol * (1.0 + hessian.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("cubic problem: Hessian is not symmetric");

  const auto h = std::make_shared<Matrix>(hessian);
  const auto c = std::make_shared<Vector>(linear);

  CompositeProblem prob;
  prob.dimension = linear.size();
  prob.smooth_value = [h, c](const Vector& x) {
    return 0.5 * x.dot(*h * x) + c->dot(x);
  };
  prob.smooth_gradient = [h, c](const Vector& x) { return Vector(*h * x + *c); };
  auto g = make_norm_cube_prox(sigma);
  prob.nonsmooth_value = g.value;
  prob.nonsmooth_prox = g.prox;
  Eigen::SelfAdjointEigenSolver<Matrix> es(hessian);
  prob.lipschitz_hint = es.eigenvalues().cwiseAbs().maxCoeff();
  return prob;
}

void logistic_model_at_zero(const LabeledDataset& ds, Matrix* hessian,
                            Vector* linear) {
  const Matrix a = ds.features.to_dense();
  const double m = static_cast<double>(ds.sample_count());
  *hessian = a.transpose() * a / (4.0 * m);
  *linear = -a.transpose() * ds.labels / (2.0 * m);
}

CompositeProblem LassoInstance::to_problem() const {
  const auto a = std::make_shared<Matrix>(matrix);
  const auto b = std::make_shared<Vector>(rhs);

  CompositeProblem prob;
  prob.dimension = matrix.cols();
  prob.smooth_value = [a, b](const Vector& x) {
    return 0.5 * (*a * x - *b).squaredNorm();
  };
  prob.smooth_gradient = [a, b](const Vector& x) {
    return Vector(a->transpose() * (*a * x - *b));
  };
  auto g = make_l1_prox(lambda);
  prob.nonsmooth_value = g.value;
  prob.nonsmooth_prox = g.prox;
  Eigen::SelfAdjointEigenSolver<Matrix> es(matrix.transpose() * matrix);
  prob.lipschitz_hint = es.eigenvalues().maxCoeff();
  return prob;
}

bool LassoInstance::certify(double rel_tol) const {
  if (!planted_solution) return false;
  const Vector& xs = *planted_solution;
  const Vector r = matrix.transpose() * (matrix * xs - rhs);
  for (Eigen::Index i = 0; i < r.size(); ++i) {
    if (std::abs(r[i]) > lambda * (1.0 + rel_tol)) return false;
    if (xs[i] != 0.0 &&
        std::abs(r[i] + lambda * (xs[i] > 0 ? 1.0 : -1.0)) > lambda * rel_tol * 10)
      return false;
  }
  return true;
}

LassoInstance generate_lasso(Eigen::Index n, Eigen::Index m, Eigen::Index s,
                             double lambda, std::uint64_t seed) {
  if (s < 0 || s > std::min(m, n))
    throw std::invalid_argument("generate_lasso: need 0 <= s <= min(m, n)");
  if (!(lambda > 0.0))
    throw std::invalid_argument("generate_lasso: lambda must be positive");

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  Matrix a(m, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < m; ++i) a(i, j) = gauss(rng);
  Vector v(m);
  for (Eigen::Index i = 0; i < m; ++i) v[i] = gauss(rng);

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) order[static_cast<std::size_t>(j)] = j;
  std::shuffle(order.begin(), order.end(), rng);

  Vector x_star = Vector::Zero(n);
  for (Eigen::Index si = 0; si < n; ++si) {
    const Eigen::Index j = order[static_cast<std::size_t>(si)];
    double d = a.col(j).dot(v);
    if (si < s) {
      // Support column: rescale so the dual certificate is tight with the
      // planted sign.
      while (std::abs(d) < 1e-8 * std::sqrt(static_cast<double>(m))) {
        for (Eigen::Index i = 0; i < m; ++i) a(i, j) = gauss(rng);
        d = a.col(j).dot(v);
      }
      const double sign = unit(rng) < 0.5 ? -1.0 : 1.0;
      a.col(j) *= lambda * sign / d;
      x_star[j] = sign * (0.5 + unit(rng));
    } else if (d != 0.0) {
      // Off-support column: strictly inside the dual ball.
      const double theta = 0.1 + 0.8 * unit(rng);
      a.col(j) *= lambda * theta / d;
    }
  }

  LassoInstance inst;
  inst.matrix = std::move(a);
  inst.rhs = inst.matrix * x_star + v;
  inst.lambda = lambda;
  inst.planted_solution = std::move(x_star);
  return inst;
}

namespace {

void write_csv_matrix(const std::string& path, const Matrix& m) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_precision(out);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      out << (j ? "," : "") << m(i, j);
    out << '\n';
  }
}

Matrix read_csv_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      double v;
      if (!parse_double(cell, &v))
        throw std::runtime_error(path + ": bad CSV cell '" + cell + "'");
      row.push_back(v);
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw std::runtime_error(path + ": ragged CSV rows");
    rows.push_back(std::move(row));
  }
  Matrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return m;
}

}  // namespace

void save_lasso(const LassoInstance& inst, const std::string& dir,
                std::uint64_t seed) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  nlohmann::json manifest = {
      {"format_version", 1},
      {"n", inst.matrix.cols()},
      {"m", inst.matrix.rows()},
      {"lambda", inst.lambda},
      {"seed", seed},
      {"has_planted_solution", inst.planted_solution.has_value()},
  };
  std::ofstream mf(fs::path(dir) / "manifest.json");
  mf << manifest.dump(2) << '\n';
  write_csv_matrix((fs::path(dir) / "matrix.csv").string(), inst.matrix);
  write_csv_matrix((fs::path(dir) / "rhs.csv").string(), inst.rhs);
  if (inst.planted_solution)
    write_csv_matrix((fs::path(dir) / "solution.csv").string(),
                     *inst.planted_solution);
}

LassoInstance load_lasso(const std::string& dir) {
  namespace fs = std::filesystem;
  std::ifstream mf(fs::path(dir) / "manifest.json");
  if (!mf) throw std::runtime_error("cannot read manifest in " + dir);
  nlohmann::json manifest = nlohmann::json::parse(mf);
  if (manifest.at("format_version").get<int>() != 1)
    throw std::runtime_error("unsupported instance format version");
  LassoInstance inst;
  inst.matrix = read_csv_matrix((fs::path(dir) / "matrix.csv").string());
  inst.rhs = Vector(read_csv_matrix((fs::path(dir) / "rhs.csv").string()).col(0));
  inst.lambda = manifest.at("lambda").get<double>();
  if (manifest.value("has_planted_solution", false))
    inst.planted_solution =
        Vector(read_csv_matrix((fs::path(dir) / "solution.csv").string()).col(0));
  const Eigen::Index n = manifest.at("n").get<Eigen::Index>();
  const Eigen::Index m = manifest.at("m").get<Eigen::Index>();
  if (inst.matrix.rows() != m || inst.matrix.cols() != n)
    throw std::runtime_error("instance payload does not match manifest shape");
  return inst;
}

}  // namespace adaprox
