#pragma once

#include <functional>
#include <utility>

#include "adaprox/types.hpp"

namespace adaprox {

/// Composite problem  min_x f(x) + g(x)  with f smooth convex and g
/// proximable convex, defined through value/gradient/prox oracles.
/// g may take the value +inf (indicator functions); arithmetic on the
/// extended reals is done with IEEE infinities.
///
/// Oracles are pure functions of their inputs; instances are immutable
/// after construction and shareable across concurrent solver runs.
struct CompositeProblem {
  Eigen::Index dimension = 0;
  std::function<double(const Vector&)> smooth_value;
  std::function<Vector(const Vector&)> smooth_gradient;
  std::function<double(const Vector&)> nonsmooth_value;
  std::function<Vector(const Vector&, double)> nonsmooth_prox;

  /// Known Lipschitz modulus of the gradient, when available (<= 0 means
  /// unknown). Used by the constant-step Nesterov baseline and by the
  /// stepsize lower-bound diagnostics.
  double lipschitz_hint = -1.0;

  void check_point(const Vector& x) const {
    if (x.size() != dimension)
      throw std::invalid_argument("CompositeProblem: point has length " +
                                  std::to_string(x.size()) + ", expected " +
                                  std::to_string(dimension));
  }
};

/// phi(x) = f(x) + g(x); +inf permitted when x is infeasible for g.
double evaluate_objective(const CompositeProblem& problem, const Vector& x);

/// prox_{gamma g}(x - gamma grad f(x)).
Vector proximal_gradient_step(const CompositeProblem& problem, const Vector& x,
                              double gamma);

}  // namespace adaprox
