#ifndef RCG_SOLVER_HPP
#define RCG_SOLVER_HPP

#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rcg/direction.hpp"
#include "rcg/line_search.hpp"
#include "rcg/objectives.hpp"
#include "rcg/rng.hpp"
#include "rcg/sphere.hpp"

namespace rcg {

struct SolverConfig {
  BetaRule rule;
  WolfeParams wolfe;
  double tolerance = 1e-6;
  int max_iterations = 10000;
  bool assert_theory = false;
  bool record_trace = false;

  void validate() const {
    rule.validate();
    wolfe.validate();
    if (!(tolerance > 0.0)) throw std::invalid_argument("SolverConfig: tolerance must be > 0");
    if (max_iterations < 1) throw std::invalid_argument("SolverConfig: max_iterations must be >= 1");
  }
};

struct TraceRow {
  int k;
  double f;
  double g_norm;
  double alpha;
  double beta;
  double g_dot_eta;
  double zoutendijk_term;  // <g,eta>^2 / |eta|^2
};

struct SolveResult {
  Point x_final;
  double f_final = 0.0;
  double g_norm_final = 0.0;
  int iterations = 0;
  bool converged = false;
  bool failed = false;
  std::string failure_reason;
  long value_evals = 0;
  long gradient_evals = 0;
  std::chrono::nanoseconds elapsed{0};
  std::vector<TraceRow> trace;

  // Diagnostics collected when assert_theory is set.
  int sufficient_descent_violations = 0;
  int wolfe_violations = 0;
  int degenerate_beta_restarts = 0;
  /// Max relative error of the transport identity
  /// <y, T(eta)> = <g_{k+1}, T(eta)> - <g_k, eta_k> over the run.
  double max_transport_identity_err = 0.0;
};

/// Uniformly distributed unit vector, deterministic per (n, seed).
inline Point random_unit_point(std::size_t n, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("random_unit_point: n must be >= 2");
  Rng rng(seed);
  Vec v(n);
  for (auto& c : v) c = rng.gaussian();
  return Point::normalized(std::move(v));
}

/// Conjugate-gradient iteration on the sphere: Wolfe line search along eta,
/// exponential update, transport of g and eta by the differential of the
/// exponential map, beta from the configured rule, direction update.
inline SolveResult solve(const ObjectiveProblem& problem, const Point& x0,
                         const SolverConfig& config) {
  config.validate();
  if (x0.dim() != problem.dimension) throw std::invalid_argument("solve: x0 dimension mismatch");

  const auto t_start = std::chrono::steady_clock::now();
  SolveResult res{x0};

  const bool is_hz_family = config.rule.variant == BetaVariant::hz ||
                            config.rule.variant == BetaVariant::modified_hz;
  const double descent_const = 1.0 - 1.0 / (4.0 * config.rule.mu);

  Point x = x0;
  double f = problem.value(x.coords());
  ++res.value_evals;
  TangentVector g = riemannian_grad(x, problem.euclidean_gradient(x.coords()));
  ++res.gradient_evals;
  double g_norm = g.norm();
  TangentVector eta = -g;
  double beta = 0.0;

  auto fail = [&](const std::string& why) {
    res.failed = true;
    res.failure_reason = why;
  };

  auto record = [&](int k, double alpha, double beta_used, double g_dot_eta, double eta_norm) {
    if (!config.record_trace) return;
    const double z = eta_norm > 0.0 ? (g_dot_eta * g_dot_eta) / (eta_norm * eta_norm) : 0.0;
    res.trace.push_back(TraceRow{k, f, g_norm, alpha, beta_used, g_dot_eta, z});
  };

  int k = 0;
  while (g_norm > config.tolerance && k < config.max_iterations && !res.failed) {
    if (!std::isfinite(f) || !std::isfinite(g_norm)) {
      fail("non-finite objective or gradient");
      break;
    }

    double slope0 = inner(g, eta);
    if (config.assert_theory && is_hz_family) {
      if (slope0 > -descent_const * g_norm * g_norm + 1e-10) ++res.sufficient_descent_violations;
    }
    if (slope0 >= 0.0) {
      // Stale conjugacy; fall back to steepest descent once.
      if (beta == 0.0) {
        fail("search direction is not a descent direction");
        break;
      }
      eta = -g;
      beta = 0.0;
      slope0 = -g_norm * g_norm;
    }

    std::optional<StepResult> step;
    bool exhausted_restart = false;
    try {
      step = search(problem, x, eta, f, slope0, config.wolfe);
      res.value_evals += step->value_evals;
      res.gradient_evals += step->gradient_evals;
    } catch (const LineSearchExhausted& e) {
      res.value_evals += e.evals;
      res.gradient_evals += e.evals;
      if (!e.best_alpha || !e.armijo_ok) {
        fail("line search exhausted without sufficient decrease");
        break;
      }
      // Accept the best sufficiently-decreasing step and restart the
      // direction from there.
      const TangentVector s = *e.best_alpha * eta;
      Point y = exp_map(x, s);
      TangentVector gy = riemannian_grad(y, problem.euclidean_gradient(y.coords()));
      ++res.gradient_evals;
      step = StepResult{*e.best_alpha, std::move(y), e.best_value, std::move(gy),
                        e.best_slope,  0, 0, true, e.curvature_ok};
      exhausted_restart = true;
    } catch (const NotDescentError&) {
      fail("line search rejected the direction");
      break;
    }

    if (config.assert_theory && !exhausted_restart) {
      const bool armijo = step->f_new <= f + config.wolfe.c1 * step->alpha * slope0;
      const bool curv = config.wolfe.mode == WolfeParams::Mode::strong_wolfe
                            ? std::abs(step->slope_new) <= config.wolfe.c2 * std::abs(slope0)
                            : step->slope_new >= config.wolfe.c2 * slope0;
      if (!armijo || !curv) ++res.wolfe_violations;
    }

    const TangentVector scaled_eta = step->alpha * eta;
    const TangentVector t_g = dexp(x, scaled_eta, g);
    const TangentVector t_eta = dexp(x, scaled_eta, eta);

    if (config.assert_theory) {
      // Gauss-lemma transport identity at runtime.
      const TangentVector y_vec = step->g_new - t_g;
      const double lhs = inner(y_vec, t_eta);
      const double rhs = inner(step->g_new, t_eta) - slope0;
      const double rel = std::abs(lhs - rhs) / (1.0 + std::abs(lhs));
      if (rel > res.max_transport_identity_err) res.max_transport_identity_err = rel;
    }

    record(k, step->alpha, beta, slope0, eta.norm());

    DirectionContext ctx{step->g_new, t_g,   t_eta,
                         g_norm * g_norm, slope0, eta.norm()};
    double beta_next = 0.0;
    if (!exhausted_restart) {
      const auto b = compute_beta(config.rule, ctx);
      if (b) {
        beta_next = *b;
      } else {
        ++res.degenerate_beta_restarts;
      }
    }

    x = std::move(step->x_new);
    f = step->f_new;
    g = std::move(step->g_new);
    g_norm = g.norm();
    beta = beta_next;
    eta = next_direction(g, beta, t_eta);
    ++k;
  }

  // Final row: the exit gradient against the last direction.
  record(k, 0.0, beta, inner(g, eta), eta.norm());

  res.x_final = std::move(x);
  res.f_final = f;
  res.g_norm_final = g_norm;
  res.iterations = k;
  res.converged = !res.failed && g_norm < config.tolerance;
  res.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(
      std::chrono::steady_clock::now() - t_start);
  return res;
}

struct StabilityEstimate {
  int stability_number;
  double f_best;
};

/// Minimizes the stability objective from several seeded random starts and
/// reads off round(1/f*) as the stability number.
inline StabilityEstimate stability_number(const Graph& G, int restarts, const SolverConfig& config,
                                          std::uint64_t base_seed = 0) {
  if (restarts < 1) throw std::invalid_argument("stability_number: restarts must be >= 1");
  const auto problem = make_stability_problem(G);
  double best = std::numeric_limits<double>::infinity();
  int ok = 0;
  for (int r = 0; r < restarts; ++r) {
    const SolveResult res = solve(problem, random_unit_point(problem.dimension, base_seed + r), config);
    if (res.failed) continue;
    ++ok;
    if (res.f_final < best) best = res.f_final;
  }
  if (ok == 0) throw std::runtime_error("stability_number: all restarts failed");
  return {static_cast<int>(std::lround(1.0 / best)), best};
}

}  // namespace rcg

#endif
