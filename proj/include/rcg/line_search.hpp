#ifndef RCG_LINE_SEARCH_HPP
#define RCG_LINE_SEARCH_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rcg/objectives.hpp"
#include "rcg/sphere.hpp"

namespace rcg {

struct WolfeParams {
  double c1 = 1e-4;
  double c2 = 0.9;
  enum class Mode { wolfe, strong_wolfe };
  Mode mode = Mode::strong_wolfe;
  double initial_step = 1.0;
  double expansion = 2.0;
  int max_bracket = 30;
  int max_zoom = 30;

  void validate() const {
    if (!(0.0 < c1 && c1 < c2 && c2 < 1.0)) {
      throw std::invalid_argument("WolfeParams: need 0 < c1 < c2 < 1");
    }
    if (!(initial_step > 0.0) || !(expansion > 1.0)) {
      throw std::invalid_argument("WolfeParams: need initial_step > 0 and expansion > 1");
    }
  }
};

struct NotDescentError : std::invalid_argument {
  explicit NotDescentError(double slope)
      : std::invalid_argument("line search requires a descent direction, slope0 = " +
                              std::to_string(slope)) {}
};

/// Thrown when the bracket/zoom budgets run out. Carries the best step that
/// satisfied the sufficient-decrease condition, if one was seen.
struct LineSearchExhausted : std::runtime_error {
  explicit LineSearchExhausted(int evals_spent)
      : std::runtime_error("line search budget exhausted"), evals(evals_spent) {}
  LineSearchExhausted(int evals_spent, double alpha, double value, double slope, bool curv)
      : std::runtime_error("line search budget exhausted"), evals(evals_spent),
        best_alpha(alpha), best_value(value), best_slope(slope),
        armijo_ok(true), curvature_ok(curv) {}
  int evals;  // probes spent; each costs one value and one gradient evaluation
  std::optional<double> best_alpha;
  double best_value = 0.0;
  double best_slope = 0.0;
  bool armijo_ok = false;
  bool curvature_ok = false;
};

/// A step accepted by the scalar Wolfe search.
struct ScalarStep {
  double alpha;
  double value;
  double slope;
  int evals;
  bool armijo_ok;
  bool curvature_ok;
};

/// Bracket-then-zoom Wolfe search on a scalar function phi with phi(0) = f0
/// and phi'(0) = slope0 < 0. probe(alpha) must return (phi, phi').
inline ScalarStep search_scalar(const std::function<std::pair<double, double>(double)>& probe_fn,
                                double f0, double slope0, const WolfeParams& params) {
  params.validate();
  if (!(slope0 < 0.0)) throw NotDescentError(slope0);

  struct Probe {
    double alpha, value, slope;
  };
  int evals = 0;
  auto probe = [&](double alpha) -> Probe {
    auto [v, s] = probe_fn(alpha);
    ++evals;
    return {alpha, v, s};
  };

  const bool strong = params.mode == WolfeParams::Mode::strong_wolfe;
  auto armijo = [&](const Probe& p) { return p.value <= f0 + params.c1 * p.alpha * slope0; };
  auto curvature = [&](const Probe& p) {
    return strong ? std::abs(p.slope) <= params.c2 * std::abs(slope0)
                  : p.slope >= params.c2 * slope0;
  };

  std::optional<Probe> best;  // lowest phi among Armijo-satisfying probes
  auto note = [&](const Probe& p) {
    if (armijo(p) && (!best || p.value < best->value)) best = p;
  };
  auto exhausted = [&]() -> LineSearchExhausted {
    if (best) return LineSearchExhausted(evals, best->alpha, best->value, best->slope, curvature(*best));
    return LineSearchExhausted(evals);
  };
  auto accept = [&](const Probe& p) -> ScalarStep {
    return {p.alpha, p.value, p.slope, evals, true, true};
  };

  auto zoom = [&](Probe lo, Probe hi) -> ScalarStep {
    for (int j = 0; j < params.max_zoom; ++j) {
      const double a = std::min(lo.alpha, hi.alpha);
      const double b = std::max(lo.alpha, hi.alpha);
      const double width = b - a;
      // Minimizer of the quadratic through (lo: phi, phi') and (hi: phi);
      // use it only if it lands in the middle 80%, otherwise bisect.
      double cand = 0.5 * (a + b);
      const double d = hi.alpha - lo.alpha;
      const double denom = 2.0 * (hi.value - lo.value - lo.slope * d);
      if (denom != 0.0) {
        const double q = lo.alpha - lo.slope * d * d / denom;
        if (q > a + 0.1 * width && q < b - 0.1 * width) cand = q;
      }
      const Probe p = probe(cand);
      note(p);
      if (!armijo(p) || p.value >= lo.value) {
        hi = p;
      } else {
        if (curvature(p)) return accept(p);
        if (p.slope * (hi.alpha - lo.alpha) >= 0.0) hi = lo;
        lo = p;
      }
      if (width < 1e-16 * (1.0 + b)) break;
    }
    throw exhausted();
  };

  Probe prev{0.0, f0, slope0};
  double alpha = params.initial_step;
  for (int i = 0; i < params.max_bracket; ++i) {
    const Probe p = probe(alpha);
    note(p);
    if (!armijo(p) || (i > 0 && p.value >= prev.value)) return zoom(prev, p);
    // Keep expanding while the slope stays negative: accepting an
    // undershooting trial that merely satisfies the loose curvature bound
    // wrecks conjugacy of the direction updates. Once the minimizer has been
    // passed, the trial is acceptable if the curvature condition holds.
    if (p.slope >= 0.0) {
      if (curvature(p)) return accept(p);
      return zoom(p, prev);
    }
    prev = p;
    alpha *= params.expansion;
  }
  throw exhausted();
}

struct StepResult {
  double alpha;
  Point x_new;
  double f_new;
  TangentVector g_new;
  /// Slope of the pullback at alpha: <g_new, dexp_{alpha eta}(eta)>.
  double slope_new;
  int value_evals;
  int gradient_evals;
  bool armijo_ok;
  bool curvature_ok;
};

/// Pullback phi(alpha) = f(exp_x(alpha eta)) and its derivative
/// phi'(alpha) = <grad f(exp_x(alpha eta)), dexp_{alpha eta}(eta)>.
/// At alpha = 0 the slope equals <g, eta> exactly.
inline std::pair<double, double> phi_and_slope(const ObjectiveProblem& problem, const Point& x,
                                               const TangentVector& eta, double alpha) {
  const TangentVector step = alpha * eta;
  const Point y = exp_map(x, step);
  const double f = problem.value(y.coords());
  if (!std::isfinite(f)) throw std::runtime_error("objective value is not finite");
  const TangentVector g = riemannian_grad(y, problem.euclidean_gradient(y.coords()));
  const double slope = inner(g, dexp(x, step, eta));
  return {f, slope};
}

/// Wolfe / strong Wolfe step-size search on the pullback of the objective
/// along eta at x.
inline StepResult search(const ObjectiveProblem& problem, const Point& x, const TangentVector& eta,
                         double f0, double slope0, const WolfeParams& params) {
  int value_evals = 0;
  int gradient_evals = 0;

  struct Cached {
    double alpha;
    Point x_new;
    TangentVector g_new;
  };
  std::vector<Cached> cache;

  auto probe = [&](double alpha) -> std::pair<double, double> {
    const TangentVector step = alpha * eta;
    Point y = exp_map(x, step);
    const double f = problem.value(y.coords());
    ++value_evals;
    if (!std::isfinite(f)) throw std::runtime_error("objective value is not finite");
    TangentVector g = riemannian_grad(y, problem.euclidean_gradient(y.coords()));
    ++gradient_evals;
    const double slope = inner(g, dexp(x, step, eta));
    cache.push_back(Cached{alpha, std::move(y), std::move(g)});
    return {f, slope};
  };

  const ScalarStep s = search_scalar(probe, f0, slope0, params);
  for (auto& c : cache) {
    if (c.alpha == s.alpha) {
      return StepResult{s.alpha,  c.x_new,     s.value,        c.g_new,       s.slope,
                        value_evals, gradient_evals, s.armijo_ok, s.curvature_ok};
    }
  }
  throw std::logic_error("line search: accepted step not in evaluation cache");
}

}  // namespace rcg

#endif
