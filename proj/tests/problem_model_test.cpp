#include <doctest.h>

#include <random>

#include "adaprox/problem.hpp"
#include "adaprox/problems_io.hpp"
#include "adaprox/prox.hpp"
#include "test_util.hpp"

using namespace adaprox;

TEST_CASE("objective of a plain quadratic") {
  CompositeProblem p = testutil::diag_quadratic(Vector::Ones(2));
  Vector x(2);
  x << 1.0, 1.0;
  CHECK(evaluate_objective(p, x) == 1.0);
}

TEST_CASE("indicator nonsmooth part yields +inf off its domain") {
  CompositeProblem p;
  p.dimension = 1;
  p.smooth_value = [](const Vector&) { return 0.0; };
  p.smooth_gradient = [](const Vector& x) { return Vector(Vector::Zero(x.size())); };
  p.nonsmooth_value = [](const Vector& x) { return x[0] >= 0.0 ? 0.0 : kInf; };
  p.nonsmooth_prox = [](const Vector& v, double) {
    return Vector(v.cwiseMax(0.0));
  };
  Vector x(1);
  x << -1.0;
  CHECK(evaluate_objective(p, x) == kInf);
}

TEST_CASE("dimension mismatch is rejected") {
  CompositeProblem p = testutil::diag_quadratic(Vector::Ones(3));
  CHECK_THROWS_AS(evaluate_objective(p, Vector::Zero(2)), std::invalid_argument);
  CHECK_THROWS_AS(proximal_gradient_step(p, Vector::Zero(2), 1.0),
                  std::invalid_argument);
}

TEST_CASE("proximal gradient step: exact minimizer of 1-d quadratic in one step") {
  CompositeProblem p = testutil::diag_quadratic(Vector::Ones(1));
  Vector x(1);
  x << 2.0;
  CHECK(proximal_gradient_step(p, x, 1.0)[0] == 0.0);
}

TEST_CASE("proximal gradient step with zero smooth part is a pure prox") {
  CompositeProblem p;
  p.dimension = 1;
  p.smooth_value = [](const Vector&) { return 0.0; };
  p.smooth_gradient = [](const Vector& x) { return Vector(Vector::Zero(x.size())); };
  auto g = make_l1_prox(1.0);
  p.nonsmooth_value = g.value;
  p.nonsmooth_prox = g.prox;
  Vector x(1);
  x << 2.0;
  CHECK(proximal_gradient_step(p, x, 1.0)[0] == 1.0);
}

TEST_CASE("proximal gradient step: shifted quadratic plus l1, hand value") {
  // f = (1/2)|x - (3,0)|^2, g = |.|_1, x = 0, gamma = 0.5:
  // x - gamma grad = (1.5, 0), soft-threshold by 0.5 -> (1, 0).
  CompositeProblem p;
  p.dimension = 2;
  Vector c(2);
  c << 3.0, 0.0;
  p.smooth_value = [c](const Vector& x) { return 0.5 * (x - c).squaredNorm(); };
  p.smooth_gradient = [c](const Vector& x) { return Vector(x - c); };
  auto g = make_l1_prox(1.0);
  p.nonsmooth_value = g.value;
  p.nonsmooth_prox = g.prox;
  Vector out = proximal_gradient_step(p, Vector::Zero(2), 0.5);
  CHECK(out[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(out[1] == 0.0);
}

TEST_CASE("nonpositive stepsize is rejected") {
  CompositeProblem p = testutil::diag_quadratic(Vector::Ones(1));
  CHECK_THROWS_AS(proximal_gradient_step(p, Vector::Zero(1), 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(proximal_gradient_step(p, Vector::Zero(1), -1.0),
                  std::invalid_argument);
}

TEST_CASE("classical descent for gamma <= 1/L") {
  std::mt19937_64 rng(11);
  Vector d(6);
  d << 0.3, 0.7, 1.1, 1.9, 2.5, 4.0;
  CompositeProblem p = testutil::diag_quadratic(d);
  const double gamma = 1.0 / p.lipschitz_hint;
  for (int trial = 0; trial < 20; ++trial) {
    Vector x = testutil::random_vector(6, rng, 3.0);
    Vector x_next = proximal_gradient_step(p, x, gamma);
    CHECK(evaluate_objective(p, x_next) <= evaluate_objective(p, x) + 1e-12);
  }
}

TEST_CASE("objective evaluation is bit-deterministic") {
  std::mt19937_64 rng(5);
  LassoInstance inst = generate_lasso(30, 20, 4, 0.5, 17);
  CompositeProblem p = inst.to_problem();
  Vector x = testutil::random_vector(30, rng);
  const double a = evaluate_objective(p, x);
  const double b = evaluate_objective(p, x);
  CHECK(a == b);
}

TEST_CASE("lasso objective agrees with an independent dense evaluation") {
  std::mt19937_64 rng(23);
  LassoInstance inst = generate_lasso(30, 20, 4, 0.5, 99);
  CompositeProblem p = inst.to_problem();
  for (int trial = 0; trial < 10; ++trial) {
    Vector x = testutil::random_vector(30, rng);
    double direct = 0.5 * (inst.matrix * x - inst.rhs).squaredNorm() +
                    inst.lambda * x.cwiseAbs().sum();
    CHECK(evaluate_objective(p, x) ==
          doctest::Approx(direct).epsilon(1e-12));
  }
}

TEST_CASE("prox oracles are firmly nonexpansive on sampled pairs") {
  std::mt19937_64 rng(31);
  auto g = make_l1_prox(0.7);
  for (int trial = 0; trial < 50; ++trial) {
    Vector v = testutil::random_vector(5, rng, 2.0);
    Vector w = testutil::random_vector(5, rng, 2.0);
    Vector pv = g.prox(v, 1.3);
    Vector pw = g.prox(w, 1.3);
    CHECK((pv - pw).squaredNorm() <= (pv - pw).dot(v - w) + 1e-12);
  }
}
