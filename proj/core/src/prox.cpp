#include "adaprox/prox.hpp"

#include <Eigen/Cholesky>
#include <cmath>

namespace adaprox {

Vector prox_l1(const Vector& v, double gamma_lambda) {
  if (gamma_lambda < 0.0)
    throw std::invalid_argument("prox_l1: threshold must be nonnegative");
  Vector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v[i]) - gamma_lambda;
    out[i] = mag > 0.0 ? std::copysign(mag, v[i]) : 0.0;
  }
  return out;
}

Vector prox_cubic(const Vector& v, double gamma_sigma) {
  if (gamma_sigma < 0.0)
    throw std::invalid_argument("prox_cubic: gamma*sigma must be nonnegative");
  const double nv = v.norm();
  if (nv == 0.0 || gamma_sigma == 0.0) return v;
  const double r = 2.0 * nv / (1.0 + std::sqrt(1.0 + 4.0 * gamma_sigma * nv));
  return (r / nv) * v;
}

Vector project_box(const Vector& v, double lo, double hi) {
  return v.cwiseMax(lo).cwiseMin(hi);
}

Vector linearized_argmin_quadratic(const Matrix& q_matrix, const Vector& b,
                                   const Vector& c) {
  Eigen::LLT<Matrix> llt(q_matrix);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("linearized_argmin_quadratic: Q is not positive definite");
  return llt.solve(b - c);
}

ProxCatalogEntry make_zero_prox() {
  ProxCatalogEntry e;
  e.name = "zero";
  e.value = [](const Vector&) { return 0.0; };
  e.prox = [](const Vector& v, double) { return v; };
  return e;
}

ProxCatalogEntry make_l1_prox(double lambda) {
  ProxCatalogEntry e;
  e.name = "l1";
  e.parameters = {lambda};
  e.value = [lambda](const Vector& x) { return lambda * x.lpNorm<1>(); };
  e.prox = [lambda](const Vector& v, double gamma) {
    return prox_l1(v, gamma * lambda);
  };
  return e;
}

ProxCatalogEntry make_squared_l2_prox(double lambda) {
  ProxCatalogEntry e;
  e.name = "squared_l2";
  e.parameters = {lambda};
  e.value = [lambda](const Vector& x) { return 0.5 * lambda * x.squaredNorm(); };
  e.prox = [lambda](const Vector& v, double gamma) {
    return Vector(v / (1.0 + gamma * lambda));
  };
  return e;
}

ProxCatalogEntry make_box_prox(double lo, double hi) {
  ProxCatalogEntry e;
  e.name = "box";
  e.parameters = {lo, hi};
  e.value = [lo, hi](const Vector& x) {
    for (Eigen::Index i = 0; i < x.size(); ++i)
      if (x[i] < lo || x[i] > hi) return kInf;
    return 0.0;
  };
  e.prox = [lo, hi](const Vector& v, double) { return project_box(v, lo, hi); };
  return e;
}

ProxCatalogEntry make_norm_cube_prox(double sigma) {
  ProxCatalogEntry e;
  e.name = "norm_cube";
  e.parameters = {sigma};
  e.value = [sigma](const Vector& x) {
    const double n = x.norm();
    return sigma / 3.0 * n * n * n;
  };
  e.prox = [sigma](const Vector& v, double gamma) {
    return prox_cubic(v, gamma * sigma);
  };
  return e;
}

}  // namespace adaprox
