#include "adaprox/problem.hpp"

namespace adaprox {

double evaluate_objective(const CompositeProblem& problem, const Vector& x) {
  problem.check_point(x);
  double fv = problem.smooth_value ? problem.smooth_value(x) : 0.0;
  double gv = problem.nonsmooth_value ? problem.nonsmooth_value(x) : 0.0;
  if (gv == kInf || fv == kInf) return kInf;
  return fv + gv;
}

Vector proximal_gradient_step(const CompositeProblem& problem, const Vector& x,
                              double gamma) {
  problem.check_point(x);
  if (!(gamma > 0.0))
    throw std::invalid_argument("proximal_gradient_step: gamma must be positive");
  Vector v = x - gamma * problem.smooth_gradient(x);
  if (!problem.nonsmooth_prox) return v;
  return problem.nonsmooth_prox(v, gamma);
}

}  // namespace adaprox
