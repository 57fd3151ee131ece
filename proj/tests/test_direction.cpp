#include <cmath>

#include "doctest.h"
#include "rcg/direction.hpp"
#include "rcg/rng.hpp"
#include "rcg/solver.hpp"

using namespace rcg;

namespace {

const Point kBase = Point(Vec{1, 0, 0, 0, 0});

TangentVector tv(double a, double b, double c, double d) {
  return TangentVector(kBase, Vec{0, a, b, c, d});
}

// Hand-built context realizing <g_new, y> = 1, <y, t_eta> = 2, |y|^2 = 5,
// <g_new, t_eta> = 3 (y = g_new - t_g_old).
DirectionContext hand_ctx() {
  return DirectionContext{tv(3, -5, 0, 0), tv(1, -6, 0, 0), tv(1, 0, 0, 0), 1.0, 0.0, 1.0};
}

DirectionContext random_ctx(Rng& rng) {
  Vec base(5);
  for (auto& v : base) v = rng.gaussian();
  const Point x = Point::normalized(std::move(base));
  auto rt = [&] {
    Vec v(5);
    for (auto& c : v) c = rng.gaussian();
    return project_tangent(x, v);
  };
  return DirectionContext{rt(), rt(), rt(), 0.5 + rng.uniform(), rng.gaussian(),
                          0.1 + rng.uniform()};
}

}  // namespace

TEST_CASE("FR ratio of equal norms is 1") {
  const TangentVector g = tv(1, 2, 0, 0);
  DirectionContext ctx{g, g, tv(0, 0, 1, 0), 5.0, -1.0, 1.0};
  const auto b = compute_beta({BetaVariant::fr}, ctx);
  REQUIRE(b);
  CHECK(*b == doctest::Approx(1.0));
}

TEST_CASE("orthogonal g_new resets PRP/HS/HZ numerators") {
  // g_new orthogonal to both y and t_eta_old
  const TangentVector g_new = tv(0, 0, 1, 0);
  const TangentVector t_g_old = tv(2, 0, 1, 0);  // y = g_new - t_g_old = (-2, 0, 0, 0)
  const TangentVector t_eta = tv(1, 0, 0, 0);    // <y, t_eta> = -2, <g_new, t_eta> = 0
  DirectionContext ctx{g_new, t_g_old, t_eta, 1.0, 0.0, 1.0};
  for (auto v : {BetaVariant::prp, BetaVariant::hs, BetaVariant::hz}) {
    const auto b = compute_beta({v}, ctx);
    REQUIRE(b);
    CHECK(*b == doctest::Approx(0.0));
  }
}

TEST_CASE("HS and HZ hand arithmetic") {
  const auto ctx = hand_ctx();
  const auto hs = compute_beta({BetaVariant::hs}, ctx);
  REQUIRE(hs);
  CHECK(*hs == doctest::Approx(0.5));
  const auto hz = compute_beta({BetaVariant::hz, 2.0}, ctx);
  REQUIRE(hz);
  CHECK(*hz == doctest::Approx(-7.0));
}

TEST_CASE("modified HZ floors at zeta_next") {
  const auto ctx = hand_ctx();  // eta_old_norm = 1
  const auto mhz = compute_beta({BetaVariant::modified_hz, 2.0, 0.01}, ctx);
  REQUIRE(mhz);
  // zeta_next = -1/0.01 = -100, so max{-7, -100} = -7
  CHECK(*mhz == doctest::Approx(-7.0));
}

TEST_CASE("modified HZ stays in [beta_hz, max(beta_hz, 0)]") {
  Rng rng(31);
  for (int t = 0; t < 500; ++t) {
    auto ctx = random_ctx(rng);
    for (double zeta : {0.01, 0.5, 10.0}) {
      const auto hz = compute_beta({BetaVariant::hz, 2.0}, ctx);
      const auto mhz = compute_beta({BetaVariant::modified_hz, 2.0, zeta}, ctx);
      if (!hz || !mhz) continue;
      CHECK(*mhz >= *hz);
      CHECK(*mhz <= std::max(*hz, 0.0));
    }
  }
}

TEST_CASE("hybrid rules are max/min compositions") {
  Rng rng(47);
  for (int t = 0; t < 500; ++t) {
    auto ctx = random_ctx(rng);
    const auto hs = compute_beta({BetaVariant::hs}, ctx);
    const auto dy = compute_beta({BetaVariant::dy}, ctx);
    const auto hsdy = compute_beta({BetaVariant::hybrid_hs_dy}, ctx);
    if (hs && dy && hsdy) {
      CHECK(*hsdy == std::max(0.0, std::min(*hs, *dy)));
      CHECK(*hsdy >= 0.0);
      CHECK(*hsdy <= std::max(0.0, *dy));
    }
    const auto fr = compute_beta({BetaVariant::fr}, ctx);
    const auto prp = compute_beta({BetaVariant::prp}, ctx);
    const auto frprp = compute_beta({BetaVariant::hybrid_fr_prp}, ctx);
    if (fr && prp && frprp) {
      CHECK(*frprp == std::max(0.0, std::min(*fr, *prp)));
      CHECK(*frprp >= 0.0);
      CHECK(*frprp <= *fr);
    }
  }
}

TEST_CASE("HZ with mu = 2 equals the expanded Euclidean form") {
  Rng rng(53);
  for (int t = 0; t < 500; ++t) {
    auto ctx = random_ctx(rng);
    const auto hz = compute_beta({BetaVariant::hz, 2.0}, ctx);
    if (!hz) continue;
    const TangentVector y = ctx.g_new - ctx.t_g_old;
    const double y_t = inner(y, ctx.t_eta_old);
    // (1 / <y, t_eta>) <y - 2 (|y|^2 / <y, t_eta>) t_eta, g_new>
    const TangentVector u = y - (2.0 * inner(y, y) / y_t) * ctx.t_eta_old;
    const double expanded = inner(u, ctx.g_new) / y_t;
    CHECK(std::abs(*hz - expanded) <= 1e-12 * (1.0 + std::abs(*hz)));
  }
}

TEST_CASE("transport-built contexts satisfy the Gauss-lemma denominator identity") {
  Rng rng(61);
  for (int t = 0; t < 200; ++t) {
    Vec b(6);
    for (auto& v : b) v = rng.gaussian();
    const Point x = Point::normalized(std::move(b));
    auto rt = [&] {
      Vec v(6);
      for (auto& c : v) c = rng.gaussian();
      return project_tangent(x, v);
    };
    const TangentVector g_old = rt();
    const TangentVector eta_old = rt();
    // the solver always transports along the accepted step alpha * eta_old
    const double alpha = 0.05 + rng.uniform();
    const TangentVector step = alpha * eta_old;
    const Point y_pt = exp_map(x, step);
    const TangentVector g_new = project_tangent(y_pt, [&] {
      Vec v(6);
      for (auto& c : v) c = rng.gaussian();
      return v;
    }());
    const TangentVector t_g = dexp(x, step, g_old);
    const TangentVector t_eta = dexp(x, step, eta_old);
    const TangentVector y = g_new - t_g;
    const double lhs = inner(y, t_eta);
    const double rhs = inner(g_new, t_eta) - inner(g_old, eta_old);
    CHECK(std::abs(lhs - rhs) <= 1e-10 * (1.0 + std::abs(lhs) + std::abs(rhs)));
  }
}

TEST_CASE("next_direction") {
  const TangentVector g = tv(1, 0, 0, 0);
  const TangentVector te = tv(0, 1, 0, 0);
  const auto sd = next_direction(g, 0.0, te);
  CHECK(sd.coords()[1] == doctest::Approx(-1.0));
  const auto d = next_direction(g, 2.0, te);
  CHECK(d.coords()[1] == doctest::Approx(-1.0));
  CHECK(d.coords()[2] == doctest::Approx(2.0));
  CHECK_THROWS_AS(next_direction(g, 1.0, TangentVector(Point(Vec{0, 1, 0, 0, 0}), Vec{1, 0, 0, 0, 0})),
                  std::invalid_argument);
}

TEST_CASE("parameter validation and rule names") {
  CHECK_THROWS_AS(compute_beta({BetaVariant::hz, 0.2}, hand_ctx()), std::invalid_argument);
  CHECK_THROWS_AS(parse_beta_variant("nope"), std::invalid_argument);
  for (auto v : {BetaVariant::fr, BetaVariant::prp, BetaVariant::hs, BetaVariant::dy,
                 BetaVariant::hybrid_hs_dy, BetaVariant::hybrid_fr_prp, BetaVariant::hz,
                 BetaVariant::modified_hz}) {
    CHECK(parse_beta_variant(beta_rule_name(v)) == v);
  }
}
