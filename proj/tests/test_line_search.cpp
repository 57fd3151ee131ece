#include <cmath>

#include "doctest.h"
#include "rcg/line_search.hpp"
#include "rcg/solver.hpp"

using namespace rcg;

TEST_CASE("phi_and_slope at alpha = 0 matches (f, <g, eta>)") {
  const SpdMatrix D2(2, {1, 0, 0, 2});
  const auto problem = make_rayleigh_problem(D2);
  const double s = 1.0 / std::sqrt(2.0);
  const Point x(Vec{s, s});
  const TangentVector g = riemannian_grad(x, problem.euclidean_gradient(x.coords()));
  const TangentVector eta = -g;
  const auto [f0, slope0] = phi_and_slope(problem, x, eta, 0.0);
  CHECK(f0 == doctest::Approx(1.5));
  // slope at 0 is -|g|^2 = -1 for this instance
  CHECK(slope0 == doctest::Approx(-1.0));
}

TEST_CASE("phi slope matches central finite differences") {
  const auto problem = make_rayleigh_problem(generate_spd(20, 2));
  const Point x = random_unit_point(20, 3);
  const TangentVector g = riemannian_grad(x, problem.euclidean_gradient(x.coords()));
  const TangentVector eta = -g;
  const double h = 1e-6;
  for (double alpha : {0.0, 0.3, 1.0, 2.5}) {
    const auto [f, slope] = phi_and_slope(problem, x, eta, alpha);
    const double fd = (phi_and_slope(problem, x, eta, alpha + h).first -
                       phi_and_slope(problem, x, eta, alpha - h).first) /
                      (2.0 * h);
    CHECK(std::abs(slope - fd) <= 1e-5 * (1.0 + std::abs(fd)));
  }
}

TEST_CASE("scalar search on phi(a) = (a-1)^2") {
  auto phi = [](double a) { return std::make_pair((a - 1.0) * (a - 1.0), 2.0 * (a - 1.0)); };
  WolfeParams wp;  // c1 = 1e-4, c2 = 0.9, strong
  const ScalarStep s = search_scalar(phi, 1.0, -2.0, wp);
  CHECK(s.armijo_ok);
  CHECK(s.curvature_ok);
  CHECK(s.value <= 1.0 + wp.c1 * s.alpha * (-2.0));
  CHECK(std::abs(s.slope) <= wp.c2 * 2.0);
  CHECK(s.alpha > 0.05);
  CHECK(s.alpha < 1.95);
}

TEST_CASE("non-descent slope is rejected") {
  auto phi = [](double a) { return std::make_pair(a, 1.0); };
  CHECK_THROWS_AS(search_scalar(phi, 0.0, 1.0, WolfeParams{}), NotDescentError);
}

TEST_CASE("invalid Wolfe constants are rejected") {
  WolfeParams wp;
  wp.c1 = 0.95;  // violates c1 < c2
  auto phi = [](double a) { return std::make_pair(-a, -1.0); };
  CHECK_THROWS_AS(search_scalar(phi, 0.0, -1.0, wp), std::invalid_argument);
}

TEST_CASE("accepted steps satisfy the configured conditions on the sphere") {
  const auto problem = make_rayleigh_problem(generate_spd(30, 11));
  WolfeParams wp;
  for (int t = 0; t < 25; ++t) {
    const Point x = random_unit_point(30, 100 + t);
    const TangentVector g = riemannian_grad(x, problem.euclidean_gradient(x.coords()));
    if (g.norm() < 1e-12) continue;
    const TangentVector eta = -g;
    const double f0 = problem.value(x.coords());
    const double slope0 = inner(g, eta);
    const StepResult s = search(problem, x, eta, f0, slope0, wp);
    // Armijo, exactly as stated
    CHECK(s.f_new <= f0 + wp.c1 * s.alpha * slope0);
    // strong curvature condition
    CHECK(std::abs(s.slope_new) <= wp.c2 * std::abs(slope0));
    // evaluation budget
    CHECK(s.value_evals + s.gradient_evals <= 2 * (wp.max_bracket + wp.max_zoom) + 2);
    // determinism
    const StepResult s2 = search(problem, x, eta, f0, slope0, wp);
    CHECK(s.alpha == s2.alpha);
  }
}

TEST_CASE("weak Wolfe mode") {
  const auto problem = make_rayleigh_problem(generate_spd(12, 4));
  WolfeParams wp;
  wp.mode = WolfeParams::Mode::wolfe;
  const Point x = random_unit_point(12, 8);
  const TangentVector g = riemannian_grad(x, problem.euclidean_gradient(x.coords()));
  const TangentVector eta = -g;
  const double f0 = problem.value(x.coords());
  const double slope0 = inner(g, eta);
  const StepResult s = search(problem, x, eta, f0, slope0, wp);
  CHECK(s.f_new <= f0 + wp.c1 * s.alpha * slope0);
  CHECK(s.slope_new >= wp.c2 * slope0);
}
