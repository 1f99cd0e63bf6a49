#include <doctest.h>

#include <random>

#include "adaprox/curvature.hpp"
#include "test_util.hpp"

using namespace adaprox;

TEST_CASE("coinciding iterates give exact zeros") {
  Vector x(3);
  x << 1.0, -2.0, 0.5;
  Vector g(3);
  g << 4.0, 4.0, 4.0;
  auto est = estimate_curvature(x, x, g, 2.0 * g);
  CHECK(est.ell == 0.0);
  CHECK(est.big_l == 0.0);
}

TEST_CASE("hand-evaluated secant pair") {
  Vector x0(2), x1(2), g0(2), g1(2);
  x0 << 0.0, 0.0;
  x1 << 1.0, 0.0;
  g0 << 0.0, 0.0;
  g1 << 2.0, 0.0;
  auto est = estimate_curvature(x0, x1, g0, g1);
  CHECK(est.ell == 2.0);
  CHECK(est.big_l == 2.0);
}

TEST_CASE("diagonal quadratic isolates each eigenvalue") {
  Vector d(2);
  d << 1.0, 4.0;
  auto grad = [&](const Vector& x) { return Vector(d.cwiseProduct(x)); };
  Vector a(2), b(2), c(2);
  a << 1.0, 1.0;
  b << 2.0, 1.0;
  c << 1.0, 2.0;
  auto est1 = estimate_curvature(a, b, grad(a), grad(b));
  CHECK(est1.ell == 1.0);
  CHECK(est1.big_l == 1.0);
  auto est2 = estimate_curvature(a, c, grad(a), grad(c));
  CHECK(est2.ell == 4.0);
  CHECK(est2.big_l == 4.0);
}

TEST_CASE("estimates respect 0 <= ell <= L <= Lipschitz modulus") {
  std::mt19937_64 rng(77);
  Vector d(8);
  d << 0.1, 0.4, 0.9, 1.3, 2.0, 2.7, 3.3, 5.0;
  auto grad = [&](const Vector& x) { return Vector(d.cwiseProduct(x)); };
  const double l_modulus = d.maxCoeff();
  for (int trial = 0; trial < 200; ++trial) {
    Vector x = testutil::random_vector(8, rng, 2.0);
    Vector y = testutil::random_vector(8, rng, 2.0);
    auto est = estimate_curvature(x, y, grad(x), grad(y));
    const double tol = 1e-9 + 1e-7 * (1.0 + est.big_l);
    CHECK(est.ell >= -tol);
    CHECK(est.ell <= est.big_l + tol);
    CHECK(est.big_l <= l_modulus + tol);
  }
}

TEST_CASE("scaling f by c scales both estimates by c") {
  std::mt19937_64 rng(78);
  Vector d(4);
  d << 0.5, 1.0, 2.0, 3.0;
  auto grad = [&](const Vector& x) { return Vector(d.cwiseProduct(x)); };
  const double c = 2.0;  // power of two keeps the scaling exact in binary
  for (int trial = 0; trial < 20; ++trial) {
    Vector x = testutil::random_vector(4, rng);
    Vector y = testutil::random_vector(4, rng);
    auto base = estimate_curvature(x, y, grad(x), grad(y));
    auto scaled =
        estimate_curvature(x, y, Vector(c * grad(x)), Vector(c * grad(y)));
    CHECK(scaled.ell == doctest::Approx(c * base.ell).epsilon(1e-14));
    CHECK(scaled.big_l == doctest::Approx(c * base.big_l).epsilon(1e-14));
  }
}
