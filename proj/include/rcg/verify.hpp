#ifndef RCG_VERIFY_HPP
#define RCG_VERIFY_HPP

#include <cmath>
#include <ostream>
#include <sstream>
#include <string>

#include "rcg/benchmark.hpp"
#include "rcg/direction.hpp"
#include "rcg/jacobi.hpp"
#include "rcg/line_search.hpp"
#include "rcg/objectives.hpp"
#include "rcg/rng.hpp"
#include "rcg/solver.hpp"
#include "rcg/sphere.hpp"

namespace rcg {

namespace verify_detail {

struct Reporter {
  std::ostream& out;
  bool all_ok = true;
  void check(const std::string& name, bool ok) {
    out << (ok ? "[PASS] " : "[FAIL] ") << name << "\n";
    all_ok = all_ok && ok;
  }
};

inline TangentVector random_tangent(const Point& x, Rng& rng, double scale = 1.0) {
  Vec v(x.dim());
  for (auto& c : v) c = scale * rng.gaussian();
  return project_tangent(x, v);
}

inline bool geometry_invariants(std::size_t n, int trials, std::uint64_t seed) {
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    const Point x = random_unit_point(n, rng.raw());
    const TangentVector eta = random_tangent(x, rng);
    const TangentVector xi = random_tangent(x, rng);

    const Point y = exp_map(x, eta);
    if (std::abs(norm(y.coords()) - 1.0) > 1e-12) return false;

    const TangentVector te = dexp(x, eta, eta);
    const TangentVector tx = dexp(x, eta, xi);
    // Gauss lemma
    if (std::abs(inner(te, tx) - inner(eta, xi)) > 1e-10 * (1.0 + eta.norm() * xi.norm())) return false;
    // radial isometry
    if (std::abs(te.norm() - eta.norm()) > 1e-10) return false;
    // non-expansiveness
    if (tx.norm() > xi.norm() + 1e-12) return false;
    // tangency
    if (std::abs(dot(tx.coords(), y.coords())) > 1e-10) return false;

    // finite-difference consistency of dexp
    const double h = 1e-6;
    const Point yp = exp_map(x, eta + h * xi);
    const Point ym = exp_map(x, eta - (h * xi));
    const Vec fd = scaled(sub(yp.coords(), ym.coords()), 1.0 / (2.0 * h));
    const double scale = std::max(1.0, norm(fd));
    if (norm(sub(fd, tx.coords())) / scale > 1e-5) return false;
  }
  return true;
}

inline bool gradient_consistency(const ObjectiveProblem& p, int trials, std::uint64_t seed,
                                 double tol = 1e-5) {
  Rng rng(seed);
  const double h = 1e-6;
  for (int t = 0; t < trials; ++t) {
    const Point x = random_unit_point(p.dimension, rng.raw());
    const Vec g = p.euclidean_gradient(x.coords());
    for (std::size_t i = 0; i < p.dimension; i += std::max<std::size_t>(1, p.dimension / 7)) {
      Vec xp = x.coords(), xm = x.coords();
      xp[i] += h;
      xm[i] -= h;
      const double fd = (p.value(xp) - p.value(xm)) / (2.0 * h);
      if (std::abs(fd - g[i]) > tol * (1.0 + std::abs(fd))) return false;
    }
  }
  return true;
}

}  // namespace verify_detail

/// Runs a compact version of every module's invariant suite, printing one
/// pass/fail line per group. Returns true when everything passed.
inline bool run_verification_suite(std::ostream& out) {
  using namespace verify_detail;
  Reporter r{out};

  // sphere_geometry
  bool geo = true;
  for (std::size_t n : {2u, 3u, 10u, 100u}) geo = geo && geometry_invariants(n, 200, 1000 + n);
  r.check("sphere geometry: unit norm, Gauss lemma, isometry, dexp vs finite differences", geo);

  // objectives: gradients vs finite differences
  {
    const auto ray = make_rayleigh_problem(generate_spd(20, 7));
    const auto stab = make_stability_problem(generate_gnp(20, 0.3, 7));
    r.check("objective gradients match central finite differences",
            gradient_consistency(ray, 25, 11) && gradient_consistency(stab, 25, 13));
  }

  // oracles
  {
    const SpdMatrix A(2, {2, 1, 1, 2});
    const bool jacobi_ok = std::abs(smallest_eigenvalue_oracle(A) - 1.0) < 1e-10;
    const auto B = generate_spd(5, 0);
    const double lmin = smallest_eigenvalue_oracle(B);
    const bool spd_ok = lmin >= 1e-2 - 1e-9 && lmin <= 1.0 + 1e-9;
    const Graph p3(3, {{0, 1}, {1, 2}});
    const bool mis_ok = brute_force_stability(p3) == 2 &&
                        brute_force_stability(Graph(3, {{0, 1}, {1, 2}, {0, 2}})) == 1;
    r.check("oracles: Jacobi eigenvalues, SPD spectrum bounds, brute-force stability", jacobi_ok && spd_ok && mis_ok);
  }

  // direction rules
  {
    const Point base = Point(Vec{1, 0, 0, 0, 0});
    auto tv = [&](double a, double b, double c, double d) {
      return TangentVector(base, Vec{0, a, b, c, d});
    };
    DirectionContext ctx{tv(3, -5, 0, 0), tv(1, -6, 0, 0), tv(1, 0, 0, 0), 1.0, 0.0, 1.0};
    const auto hs = compute_beta({BetaVariant::hs}, ctx);
    const auto hz = compute_beta({BetaVariant::hz, 2.0}, ctx);
    const auto mhz = compute_beta({BetaVariant::modified_hz, 2.0, 0.01}, ctx);
    r.check("direction rules: HS/HZ/modified-HZ hand values",
            hs && std::abs(*hs - 0.5) < 1e-12 && hz && std::abs(*hz + 7.0) < 1e-12 && mhz &&
                std::abs(*mhz + 7.0) < 1e-12);
  }

  // line search on a Rayleigh instance
  {
    const auto problem = make_rayleigh_problem(generate_spd(30, 3));
    const Point x = random_unit_point(30, 5);
    const TangentVector g = riemannian_grad(x, problem.euclidean_gradient(x.coords()));
    const TangentVector eta = -g;
    const double f0 = problem.value(x.coords());
    const double slope0 = inner(g, eta);
    WolfeParams wp;
    bool ok = false;
    try {
      const StepResult s = search(problem, x, eta, f0, slope0, wp);
      const bool armijo = s.f_new <= f0 + wp.c1 * s.alpha * slope0;
      const bool curv = std::abs(s.slope_new) <= wp.c2 * std::abs(slope0);
      ok = armijo && curv;
    } catch (const std::exception&) {
    }
    r.check("line search satisfies the strong Wolfe conditions", ok);
  }

  // solver end to end
  {
    SolverConfig cfg;
    cfg.assert_theory = true;
    const SpdMatrix A(3, {1, 0, 0, 0, 2, 0, 0, 0, 3});
    const auto res = solve(make_rayleigh_problem(A), random_unit_point(3, 42), cfg);
    const bool ray_ok = res.converged && std::abs(res.f_final - 1.0) < 1e-8 &&
                        std::abs(std::abs(res.x_final[0]) - 1.0) < 1e-6 &&
                        res.sufficient_descent_violations == 0 && res.wolfe_violations == 0;
    const Graph p3(3, {{0, 1}, {1, 2}});
    const auto est = stability_number(p3, 10, cfg);
    r.check("solver: Rayleigh reaches lambda_min, stability number of the 3-path is 2",
            ray_ok && est.stability_number == 2 && std::abs(est.f_best - 0.5) < 1e-6);
  }

  // performance profiles
  {
    std::vector<RunRecord> recs;
    auto rec = [&](const std::string& p, const std::string& s, int iters) {
      RunRecord r0;
      r0.problem_id = p;
      r0.solver_id = s;
      r0.converged = true;
      r0.iterations = iters;
      r0.elapsed_ns = iters;
      recs.push_back(r0);
    };
    rec("p1", "a", 1);
    rec("p1", "b", 2);
    rec("p2", "a", 2);
    rec("p2", "b", 1);
    const auto curves = performance_profile(recs, ProfileMetric::iterations);
    bool ok = curves.size() == 2;
    for (const auto& c : curves) {
      ok = ok && std::abs(profile_value(c, 1.0) - 0.5) < 1e-15 &&
           std::abs(profile_value(c, 2.0) - 1.0) < 1e-15;
    }
    std::ostringstream svg;
    emit_profile_svg(curves, svg, "check");
    ok = ok && svg.str().find("<svg") != std::string::npos;
    std::ostringstream csv;
    write_records_csv(recs, csv);
    std::istringstream back(csv.str());
    const auto rt = read_records_csv(back);
    ok = ok && rt.size() == recs.size() && rt[0].problem_id == "p1" && rt[3].iterations == 1;
    r.check("benchmark: profile hand example, SVG emission, records CSV round trip", ok);
  }

  return r.all_ok;
}

}  // namespace rcg

#endif
