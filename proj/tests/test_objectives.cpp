#include <cmath>

#include "doctest.h"
#include "rcg/objectives.hpp"
#include "rcg/solver.hpp"

using namespace rcg;

namespace {

Point uniform_on(const std::vector<int>& support, int n) {
  Vec v(n, 0.0);
  const double c = 1.0 / std::sqrt(static_cast<double>(support.size()));
  for (int i : support) v[i] = c;
  return Point(std::move(v));
}

}  // namespace

TEST_CASE("rayleigh value and gradient") {
  const SpdMatrix I3(3, {1, 0, 0, 0, 1, 0, 0, 0, 1});
  CHECK(rayleigh_value(I3, random_unit_point(3, 1)) == doctest::Approx(1.0));

  const SpdMatrix D(3, {1, 0, 0, 0, 2, 0, 0, 0, 3});
  CHECK(rayleigh_value(D, Point(Vec{1, 0, 0})) == doctest::Approx(1.0));
  const auto g3 = rayleigh_euclidean_grad(D, Point(Vec{0, 0, 1}));
  CHECK(g3[2] == doctest::Approx(6.0));

  const double s = 1.0 / std::sqrt(2.0);
  const SpdMatrix D2(2, {1, 0, 0, 2});
  const Point x(Vec{s, s});
  CHECK(rayleigh_value(D2, x) == doctest::Approx(1.5));
  const auto g = rayleigh_euclidean_grad(D2, x);
  CHECK(g[0] == doctest::Approx(std::sqrt(2.0)));
  CHECK(g[1] == doctest::Approx(2.0 * std::sqrt(2.0)));
}

TEST_CASE("stability value and gradient") {
  const Graph empty4(4, {});
  CHECK(stability_value(empty4, uniform_on({0, 1, 2, 3}, 4)) == doctest::Approx(0.25));

  const Graph k3(3, {{0, 1}, {1, 2}, {0, 2}});
  CHECK(stability_value(k3, uniform_on({0, 1, 2}, 3)) == doctest::Approx(1.0));
  CHECK(stability_value(k3, Point(Vec{1, 0, 0})) == doctest::Approx(1.0));

  const auto ge = stability_euclidean_grad(empty4, Point(Vec{1, 0, 0, 0}));
  CHECK(ge[0] == doctest::Approx(4.0));
  const auto gk = stability_euclidean_grad(k3, uniform_on({0, 1, 2}, 3));
  for (int i = 0; i < 3; ++i) CHECK(gk[i] == doctest::Approx(12.0 / (3.0 * std::sqrt(3.0))));
}

TEST_CASE("gradients match central finite differences") {
  const auto ray = make_rayleigh_problem(generate_spd(15, 21));
  const auto stab = make_stability_problem(generate_gnp(15, 0.3, 22));
  const double h = 1e-6;
  for (const auto* p : {&ray, &stab}) {
    for (int t = 0; t < 100; ++t) {
      const Point x = random_unit_point(p->dimension, 1000 + t);
      const Vec g = p->euclidean_gradient(x.coords());
      for (std::size_t i = 0; i < p->dimension; i += 3) {
        Vec xp = x.coords(), xm = x.coords();
        xp[i] += h;
        xm[i] -= h;
        const double fd = (p->value(xp) - p->value(xm)) / (2.0 * h);
        CHECK(std::abs(fd - g[i]) <= 1e-5 * (1.0 + std::abs(fd)));
      }
    }
  }
}

TEST_CASE("Motzkin-Straus value on stable-set indicators") {
  Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    const Graph G = generate_gnp(12, 0.3, rng.raw());
    // greedy stable set
    std::vector<int> S;
    std::vector<bool> blocked(12, false);
    for (int v = 0; v < 12; ++v) {
      if (blocked[v]) continue;
      S.push_back(v);
      for (int u : G.neighbors(v)) blocked[u] = true;
    }
    const double f = stability_value(G, uniform_on(S, 12));
    CHECK(f == doctest::Approx(1.0 / static_cast<double>(S.size())));
  }
}

TEST_CASE("random points never beat the Motzkin-Straus optimum") {
  Rng rng(17);
  for (int g = 0; g < 5; ++g) {
    const Graph G = generate_gnp(12, 0.35, rng.raw());
    const double bound = 1.0 / brute_force_stability(G);
    for (int t = 0; t < 2000; ++t) {
      CHECK(stability_value(G, random_unit_point(12, rng.raw())) >= bound - 1e-9);
    }
  }
}

TEST_CASE("generate_spd is deterministic with the stated spectrum") {
  const auto A = generate_spd(100, 3);
  const auto B = generate_spd(100, 3);
  CHECK(A.entries() == B.entries());
  for (std::size_t i = 0; i < A.n(); ++i) {
    for (std::size_t j = 0; j < A.n(); ++j) {
      CHECK(std::abs(A(i, j) - A(j, i)) <= 1e-12);
    }
  }
  const auto eig = jacobi_eigenvalues(5, generate_spd(5, 0).entries());
  CHECK(eig.front() >= 1e-2 - 1e-9);
  CHECK(eig.back() <= 1.0 + 1e-9);
}

TEST_CASE("generate_gnp edge cases and determinism") {
  CHECK(generate_gnp(10, 0.0, 4).edges().empty());
  CHECK(generate_gnp(10, 1.0, 4).edges().size() == 45);
  const auto G1 = generate_gnp(100, 0.1, 9);
  const auto G2 = generate_gnp(100, 0.1, 9);
  CHECK(G1.edges() == G2.edges());
  // binomial 4-sigma bound around 495
  const double mean = 0.1 * 4950.0;
  const double sigma = std::sqrt(4950.0 * 0.1 * 0.9);
  CHECK(std::abs(static_cast<double>(G1.edges().size()) - mean) <= 4.0 * sigma);
  CHECK_THROWS_AS(generate_gnp(10, 1.5, 0), std::invalid_argument);
}

TEST_CASE("edge list parsing") {
  const Graph p3 = read_edge_list("3\n0 1\n1 2\n");
  CHECK(p3.n() == 3);
  CHECK(p3.edges() == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});

  // comments and duplicate edges
  const Graph g = read_edge_list("# comment\n4\n0 1 # inline\n0 1\n2 3\n");
  CHECK(g.edges().size() == 2);

  CHECK_THROWS_WITH_AS(read_edge_list("3\n2 2\n"), doctest::Contains("self-loop"), ParseError);
  CHECK_THROWS_AS(read_edge_list("3\n0 5\n"), ParseError);
  CHECK_THROWS_AS(read_edge_list("# nothing\n"), ParseError);
}

TEST_CASE("matrix parsing") {
  const SpdMatrix A = read_matrix("2\n2 1\n1 2\n");
  CHECK(A(0, 1) == doctest::Approx(1.0));
  CHECK_THROWS_AS(read_matrix("3\n1 0 0\n0 1 0\n"), ParseError);       // truncated
  CHECK_THROWS_AS(read_matrix("2\n1 0.5\n0 1\n"), ParseError);         // asymmetric
  CHECK_THROWS_AS(read_matrix("2\n1 0\n0 1\n7\n"), ParseError);        // trailing data
}

TEST_CASE("brute-force stability oracle") {
  CHECK(brute_force_stability(Graph(4, {})) == 4);
  CHECK(brute_force_stability(Graph(3, {{0, 1}, {1, 2}, {0, 2}})) == 1);
  CHECK(brute_force_stability(Graph(3, {{0, 1}, {1, 2}})) == 2);
  CHECK_THROWS_AS(brute_force_stability(Graph(26, {})), std::invalid_argument);
}

TEST_CASE("Jacobi eigenvalue oracle") {
  CHECK(smallest_eigenvalue_oracle(SpdMatrix(3, {1, 0, 0, 0, 1, 0, 0, 0, 1})) == doctest::Approx(1.0));
  CHECK(smallest_eigenvalue_oracle(SpdMatrix(3, {3, 0, 0, 0, 1, 0, 0, 0, 2})) == doctest::Approx(1.0));
  CHECK(smallest_eigenvalue_oracle(SpdMatrix(2, {2, 1, 1, 2})) == doctest::Approx(1.0));
  CHECK_THROWS_AS(jacobi_eigenvalues(2, {1, 2, 3, 4}), std::invalid_argument);
}
