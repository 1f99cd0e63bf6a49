#include <doctest.h>

#include <cmath>
#include <random>

#include "adaprox/ama.hpp"
#include "adaprox/prox.hpp"
#include "test_util.hpp"

using namespace adaprox;

namespace {

// psi1(x) = (1/2) x^T Q x - b^T x (SPD Q), psi2 = lambda |.|_1, a dense A.
// The dual smooth part f(y) = psi1*(-A^T y) = (1/2)(b - A^T y)^T Q^{-1} (b - A^T y)
// has grad f(y) = -A x(y) with x(y) = Q^{-1}(b - A^T y), and psi2* is the
// box indicator on [-lambda, lambda]^m.
struct QuadL1Pair {
  Matrix q, a_dense;
  Vector b;
  double lambda = 0.5;
  AmaProblem ama;
  CompositeProblem dual;

  // for_equivalence shapes the instance so the alternating scheme and the
  // dual proximal-gradient run execute bitwise-identical arithmetic for the
  // whole horizon: orthonormal rows of A, an ill-conditioned Q that keeps the
  // iteration from reaching its fixed point within 500 steps, and a dual box
  // wide enough that the projection never rounds differently from the scaled
  // shrinkage. The default draws a generic dense instance instead.
  QuadL1Pair(Eigen::Index n, Eigen::Index m, std::uint64_t seed,
             bool for_equivalence = false) {
    std::mt19937_64 rng(seed);
    if (for_equivalence) lambda = 2.0;
    Matrix g(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) g(i, j) = testutil::random_vector(1, rng)[0];
    const double spread = for_equivalence ? 50.0 : 1.0;
    q = spread * (g * g.transpose()) + Matrix::Identity(n, n);
    a_dense = Matrix(m, n);
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        a_dense(i, j) = testutil::random_vector(1, rng)[0];
    if (for_equivalence) {
      Eigen::HouseholderQR<Matrix> qr(a_dense.transpose());
      const Matrix thin = qr.householderQ() * Matrix::Identity(n, m);
      a_dense = thin.transpose();
    }
    b = testutil::random_vector(n, rng);

    ama.primal_dim = n;
    ama.dual_dim = m;
    ama.matrix_a = SparseMatrix::from_dense(a_dense);
    const Matrix q_copy = q;
    const Vector b_copy = b;
    const SparseMatrix a_sparse = ama.matrix_a;
    ama.psi1_linearized_argmin = [q_copy, b_copy, a_sparse](const Vector& y) {
      return linearized_argmin_quadratic(q_copy, b_copy,
                                         a_sparse.multiply_transpose(y));
    };
    const double lam = lambda;
    ama.psi2_prox = [lam](const Vector& v, double gamma) {
      return prox_l1(v, lam / gamma);
    };
    ama.psi1_value = [q_copy, b_copy](const Vector& x) {
      return 0.5 * x.dot(q_copy * x) - b_copy.dot(x);
    };
    ama.psi2_value = [lam](const Vector& z) { return lam * z.lpNorm<1>(); };

    dual.dimension = m;
    dual.smooth_value = [q_copy, b_copy, a_sparse](const Vector& y) {
      const Vector u = b_copy - a_sparse.multiply_transpose(y);
      const Vector x = linearized_argmin_quadratic(q_copy, u, Vector::Zero(u.size()));
      return 0.5 * u.dot(x);
    };
    dual.smooth_gradient = [q_copy, b_copy, a_sparse](const Vector& y) {
      const Vector x = linearized_argmin_quadratic(
          q_copy, b_copy, a_sparse.multiply_transpose(y));
      return Vector(-a_sparse.multiply(x));
    };
    dual.nonsmooth_value = [lam](const Vector& y) {
      for (Eigen::Index i = 0; i < y.size(); ++i)
        if (std::abs(y[i]) > lam) return kInf;
      return 0.0;
    };
    dual.nonsmooth_prox = [lam](const Vector& v, double) {
      return project_box(v, -lam, lam);
    };
  }
};

}  // namespace

TEST_CASE("dual curvature estimates: conventions and hand values") {
  SparseMatrix eye = SparseMatrix::from_dense(Matrix::Identity(3, 3));
  Vector y(3);
  y << 1.0, 2.0, 3.0;
  auto zero = ama_curvature(y, 2.0 * y, y, y, eye);
  CHECK(zero.ell == 0.0);
  CHECK(zero.big_l == 0.0);

  // psi1 = (1/2)|x|^2, A = I: x(y) = -y, so d(Ax) = -dy.
  Vector y0(3), y1(3);
  y0 << 0.0, 0.0, 0.0;
  y1 << 1.0, -1.0, 2.0;
  auto est = ama_curvature(-y0, -y1, y0, y1, eye);
  CHECK(est.ell == 1.0);
  CHECK(est.big_l == 1.0);
}

TEST_CASE("dual curvature matches the generic secant estimate on the dual problem") {
  QuadL1Pair inst(6, 4, 31337);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    Vector y0 = testutil::random_vector(4, rng);
    Vector y1 = testutil::random_vector(4, rng);
    Vector x0 = inst.ama.psi1_linearized_argmin(y0);
    Vector x1 = inst.ama.psi1_linearized_argmin(y1);
    auto direct = ama_curvature(x0, x1, y0, y1, inst.ama.matrix_a);
    auto generic = estimate_curvature(y0, y1, inst.dual.smooth_gradient(y0),
                                      inst.dual.smooth_gradient(y1));
    CHECK(direct.ell == doctest::Approx(generic.ell).epsilon(1e-12));
    CHECK(direct.big_l == doctest::Approx(generic.big_l).epsilon(1e-12));
  }
}

TEST_CASE("trivial coupling: psi2 = 0, A = I fixes x at b and y at 0") {
  const Eigen::Index n = 3;
  AmaProblem prob;
  prob.primal_dim = prob.dual_dim = n;
  prob.matrix_a = SparseMatrix::from_dense(Matrix::Identity(n, n));
  Vector b(3);
  b << 1.0, -2.0, 0.5;
  prob.psi1_linearized_argmin = [b](const Vector& y) { return Vector(b - y); };
  prob.psi2_prox = [](const Vector& v, double) { return v; };
  prob.psi1_value = [b](const Vector& x) { return 0.5 * (x - b).squaredNorm(); };
  prob.psi2_value = [](const Vector&) { return 0.0; };

  StoppingRule stop;
  stop.tol_fixedpoint = 1e-10;
  AmaResult res = run_adaama(prob, Vector::Ones(n), 1.0, {1.5, 0.75}, stop);
  CHECK(res.converged);
  CHECK((res.x - b).norm() <= 1e-8);
  CHECK(res.y.norm() <= 1e-8);
}

TEST_CASE("dual equivalence: alternating scheme tracks proximal gradient on the dual") {
  QuadL1Pair inst(10, 8, 99, /*for_equivalence=*/true);
  Vector y0 = Vector::Zero(8);
  StoppingRule stop;
  stop.max_iters = 500;
  stop.tol_fixedpoint = 0.0;
  const FixedParams p{1.5, 0.75};

  AmaResult ama = run_adaama(inst.ama, y0, 1.0, p, stop);
  SolveResult pg = run_adapg(inst.dual, y0, 1.0, p, stop);

  const std::size_t n = std::min(ama.trace.size(), pg.trace.size());
  REQUIRE(n >= 100);
  for (std::size_t j = 0; j < n; ++j) {
    CHECK(std::abs(ama.trace[j].gamma - pg.trace[j].gamma) <=
          1e-10 * pg.trace[j].gamma);
    CHECK((ama.trace[j].y - pg.trace[j].x).norm() <=
          1e-10 * (1.0 + pg.trace[j].x.norm()));
  }
}

TEST_CASE("multiplier update identity holds to machine precision") {
  QuadL1Pair inst(6, 5, 12);
  StoppingRule stop;
  stop.max_iters = 100;
  stop.tol_fixedpoint = 0.0;
  AmaResult res = run_adaama(inst.ama, Vector::Zero(5), 1.0, {1.0, 0.5}, stop);
  for (std::size_t j = 1; j < res.trace.size(); ++j) {
    const auto& prev = res.trace[j - 1];
    const auto& cur = res.trace[j];
    const Vector lhs = cur.y - prev.y -
                       cur.gamma * (inst.ama.matrix_a.multiply(cur.x) - cur.z);
    CHECK(lhs.cwiseAbs().maxCoeff() <= 1e-14 * (1.0 + cur.y.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("small coupled problem matches an independent primal solve") {
  // A invertible: substitute w = A x to get the proximable primal
  //   min_w psi1(A^{-1} w) + lambda |w|_1
  // and map back.
  QuadL1Pair inst(3, 3, 77);
  StoppingRule stop;
  stop.max_iters = 20000;
  stop.tol_fixedpoint = 1e-11;
  AmaResult res = run_adaama(inst.ama, Vector::Zero(3), 1.0, {1.5, 0.75}, stop);
  REQUIRE(res.converged);

  const Matrix ainv = inst.a_dense.inverse();
  const Matrix qw = ainv.transpose() * inst.q * ainv;
  const Vector bw = ainv.transpose() * inst.b;
  CompositeProblem primal;
  primal.dimension = 3;
  primal.smooth_value = [qw, bw](const Vector& w) {
    return 0.5 * w.dot(qw * w) - bw.dot(w);
  };
  primal.smooth_gradient = [qw, bw](const Vector& w) { return Vector(qw * w - bw); };
  auto g = make_l1_prox(inst.lambda);
  primal.nonsmooth_value = g.value;
  primal.nonsmooth_prox = g.prox;
  StoppingRule pstop;
  pstop.max_iters = 200000;
  pstop.tol_fixedpoint = 1e-12;
  SolveOptions lean;
  lean.record_vectors = false;
  SolveResult ref = run_adapg(primal, Vector::Zero(3), 1.0, {1.5, 0.75}, pstop, lean);
  REQUIRE(ref.converged);
  const Vector x_ref = ainv * ref.x;
  CHECK((res.x - x_ref).norm() <= 1e-6 * (1.0 + x_ref.norm()));
}

TEST_CASE("primal residual trend and duality gap") {
  QuadL1Pair inst(10, 8, 500);
  StoppingRule stop;
  stop.max_iters = 400;
  stop.tol_fixedpoint = 0.0;
  AmaResult res = run_adaama(inst.ama, Vector::Zero(8), 1.0, {1.5, 0.75}, stop);
  REQUIRE(res.trace.size() >= 200);

  double early = 0.0, late = 0.0;
  for (std::size_t j = 1; j <= 50; ++j)
    early = std::max(early, res.trace[j].primal_residual);
  for (std::size_t j = res.trace.size() - 50; j < res.trace.size(); ++j)
    late = std::max(late, res.trace[j].primal_residual);
  CHECK(late < early);
  CHECK(res.trace.back().primal_residual <= 1e-6 * (1.0 + early));

  // Gap = primal value at (x, z) plus dual value; both conjugates are in
  // closed form here. psi2*(y) = 0 on the box the multipliers live in.
  const auto& last = res.trace.back();
  CHECK(last.y.cwiseAbs().maxCoeff() <= inst.lambda * (1.0 + 1e-12));
  const Vector u = inst.b - inst.a_dense.transpose() * last.y;
  const double psi1_conj = 0.5 * u.dot(inst.q.inverse() * u);
  const double gap = last.objective + psi1_conj;
  CHECK(gap >= -1e-8);
  CHECK(std::abs(gap) <= 1e-5 * (1.0 + std::abs(last.objective)));
}

TEST_CASE("input validation") {
  QuadL1Pair inst(4, 3, 1);
  StoppingRule stop;
  CHECK_THROWS_AS(run_adaama(inst.ama, Vector::Zero(3), 0.0, {1.5, 0.75}, stop),
                  std::invalid_argument);
  CHECK_THROWS_AS(run_adaama(inst.ama, Vector::Zero(2), 1.0, {1.5, 0.75}, stop),
                  std::invalid_argument);
  CHECK_THROWS_AS(run_adaama(inst.ama, Vector::Zero(3), 1.0, {1.0, 1.5}, stop),
                  std::invalid_argument);
}
