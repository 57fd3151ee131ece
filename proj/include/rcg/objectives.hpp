#ifndef RCG_OBJECTIVES_HPP
#define RCG_OBJECTIVES_HPP

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <istream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rcg/jacobi.hpp"
#include "rcg/rng.hpp"
#include "rcg/sphere.hpp"
#include "rcg/vec.hpp"

namespace rcg {

struct ParseError : std::runtime_error {
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_number(line) {}
  int line_number;
};

/// Dense symmetric positive-definite matrix, row-major.
class SpdMatrix {
 public:
  SpdMatrix(std::size_t n, std::vector<double> entries) : n_(n), entries_(std::move(entries)) {
    if (entries_.size() != n_ * n_) throw std::invalid_argument("SpdMatrix: size mismatch");
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = i + 1; j < n_; ++j) {
        if (std::abs(entries_[i * n_ + j] - entries_[j * n_ + i]) > 1e-8) {
          throw std::invalid_argument("SpdMatrix: not symmetric");
        }
      }
    }
  }

  std::size_t n() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  const std::vector<double>& entries() const { return entries_; }

  Vec multiply(const Vec& x) const {
    if (x.size() != n_) throw std::invalid_argument("SpdMatrix: dimension mismatch");
    Vec y(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
      double s = 0.0;
      const double* row = entries_.data() + i * n_;
      for (std::size_t j = 0; j < n_; ++j) s += row[j] * x[j];
      y[i] = s;
    }
    return y;
  }

 private:
  std::size_t n_;
  std::vector<double> entries_;
};

/// Undirected simple graph with 0-indexed vertices. Edges are deduplicated
/// and stored with i < j; self-loops are rejected.
class Graph {
 public:
  Graph(int n, std::vector<std::pair<int, int>> edges) : n_(n) {
    if (n_ < 1) throw std::invalid_argument("Graph: need at least one vertex");
    for (auto& [i, j] : edges) {
      if (i == j) throw std::invalid_argument("Graph: self-loop at vertex " + std::to_string(i));
      if (i < 0 || j < 0 || i >= n_ || j >= n_) {
        throw std::invalid_argument("Graph: endpoint out of range");
      }
      if (i > j) std::swap(i, j);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    edges_ = std::move(edges);
    neighbors_.assign(n_, {});
    for (const auto& [i, j] : edges_) {
      neighbors_[i].push_back(j);
      neighbors_[j].push_back(i);
    }
  }

  int n() const { return n_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<int>& neighbors(int v) const { return neighbors_[v]; }

 private:
  int n_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> neighbors_;
};

struct ObjectiveProblem {
  std::string id;
  std::size_t dimension;
  std::function<double(const Vec&)> value;
  std::function<Vec(const Vec&)> euclidean_gradient;
  std::optional<double> known_optimum;
};

// ---- Rayleigh quotient (f(x) = x^T A x) ----

inline double rayleigh_value(const SpdMatrix& A, const Point& x) {
  return dot(x.coords(), A.multiply(x.coords()));
}

inline Vec rayleigh_euclidean_grad(const SpdMatrix& A, const Point& x) {
  return scaled(A.multiply(x.coords()), 2.0);
}

// ---- Motzkin-Straus stability objective ----
// f(x) = sum_i x_i^4 + 2 * sum_{{i,j} in E} x_i^2 x_j^2. The edge sum counts
// ordered pairs; with this convention min f = 1/S(G).

inline double stability_value(const Graph& G, const Point& x) {
  if (static_cast<int>(x.dim()) != G.n()) throw std::invalid_argument("stability_value: dimension mismatch");
  const Vec& c = x.coords();
  double f = 0.0;
  for (int i = 0; i < G.n(); ++i) {
    const double xi2 = c[i] * c[i];
    double t = 0.0;
    for (int j : G.neighbors(i)) t += c[j] * c[j];
    f += xi2 * (xi2 + t);
  }
  return f;
}

inline Vec stability_euclidean_grad(const Graph& G, const Point& x) {
  if (static_cast<int>(x.dim()) != G.n()) throw std::invalid_argument("stability_euclidean_grad: dimension mismatch");
  const Vec& c = x.coords();
  Vec g(x.dim(), 0.0);
  for (int i = 0; i < G.n(); ++i) {
    double t = 0.0;
    for (int j : G.neighbors(i)) t += c[j] * c[j];
    g[i] = 4.0 * c[i] * (c[i] * c[i] + t);
  }
  return g;
}

inline ObjectiveProblem make_rayleigh_problem(SpdMatrix A, std::string id = "rayleigh") {
  const std::size_t n = A.n();
  auto shared = std::make_shared<SpdMatrix>(std::move(A));
  ObjectiveProblem p;
  p.id = std::move(id);
  p.dimension = n;
  p.value = [shared](const Vec& x) { return dot(x, shared->multiply(x)); };
  p.euclidean_gradient = [shared](const Vec& x) { return scaled(shared->multiply(x), 2.0); };
  return p;
}

inline ObjectiveProblem make_stability_problem(Graph G, std::string id = "stability") {
  const std::size_t n = static_cast<std::size_t>(G.n());
  auto shared = std::make_shared<Graph>(std::move(G));
  ObjectiveProblem p;
  p.id = std::move(id);
  p.dimension = n;
  p.value = [shared](const Vec& x) {
    double f = 0.0;
    for (int i = 0; i < shared->n(); ++i) {
      const double xi2 = x[i] * x[i];
      double t = 0.0;
      for (int j : shared->neighbors(i)) t += x[j] * x[j];
      f += xi2 * (xi2 + t);
    }
    return f;
  };
  p.euclidean_gradient = [shared](const Vec& x) {
    Vec g(x.size(), 0.0);
    for (int i = 0; i < shared->n(); ++i) {
      double t = 0.0;
      for (int j : shared->neighbors(i)) t += x[j] * x[j];
      g[i] = 4.0 * x[i] * (x[i] * x[i] + t);
    }
    return g;
  };
  return p;
}

// ---- Instance generators ----

/// Random SPD matrix A = Q diag(lambda) Q^T, Q from QR-orthonormalization of
/// a seeded Gaussian matrix, lambda log-uniform in [1e-2, 1]. Deterministic
/// per (n, seed).
// Decorrelates generator streams from other consumers of the same seed
// (e.g. starting-point draws), so an instance is never accidentally aligned
// with its paired initial iterate. splitmix64 finalizer.
inline std::uint64_t mix_seed(std::uint64_t seed) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline SpdMatrix generate_spd(std::size_t n, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("generate_spd: n must be >= 2");
  Rng rng(mix_seed(seed));
  // Columns of M, orthonormalized by modified Gram-Schmidt.
  std::vector<Vec> q(n, Vec(n));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) q[j][i] = rng.gaussian();
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < j; ++k) axpy(q[j], -dot(q[j], q[k]), q[k]);
    const double nj = norm(q[j]);
    if (nj < 1e-12) throw std::runtime_error("generate_spd: degenerate random matrix");
    for (auto& v : q[j]) v /= nj;
  }
  std::vector<double> lambda(n);
  const double lo = std::log(1e-2);
  for (std::size_t i = 0; i < n; ++i) lambda[i] = std::exp(lo * (1.0 - rng.uniform()));
  std::vector<double> a(n * n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      const double qik = lambda[k] * q[k][i];
      for (std::size_t j = 0; j < n; ++j) a[i * n + j] += qik * q[k][j];
    }
  }
  // Kill the rounding asymmetry from the accumulation order.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double m = 0.5 * (a[i * n + j] + a[j * n + i]);
      a[i * n + j] = a[j * n + i] = m;
    }
  }
  return SpdMatrix(n, std::move(a));
}

/// Erdos-Renyi G(n, p): each of the n(n-1)/2 pairs included independently
/// with probability p. Deterministic per (n, p, seed).
inline Graph generate_gnp(int n, double p, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("generate_gnp: n must be >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("generate_gnp: p must be in [0, 1]");
  Rng rng(mix_seed(seed));
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (rng.uniform() < p) edges.emplace_back(i, j);
    }
  }
  return Graph(n, std::move(edges));
}

// ---- File ingestion ----
// Edge-list format: first non-comment line "n"; each following line "i j";
// "#" starts a comment. Matrix format: first line "n", then n rows of n
// whitespace-separated decimals.

inline Graph read_edge_list(std::istream& in) {
  int line_no = 0;
  int n = -1;
  std::vector<std::pair<int, int>> edges;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    std::istringstream ls(line);
    if (n < 0) {
      if (!(ls >> n)) throw ParseError(line_no, "expected vertex count");
      std::string extra;
      if (ls >> extra) throw ParseError(line_no, "unexpected token after vertex count");
      if (n < 1) throw ParseError(line_no, "vertex count must be >= 1");
      continue;
    }
    int i, j;
    if (!(ls >> i >> j)) throw ParseError(line_no, "expected edge 'i j'");
    std::string extra;
    if (ls >> extra) throw ParseError(line_no, "unexpected token after edge");
    if (i == j) throw ParseError(line_no, "self-loop " + std::to_string(i));
    if (i < 0 || j < 0 || i >= n || j >= n) throw ParseError(line_no, "endpoint out of range");
    edges.emplace_back(i, j);
  }
  if (n < 0) throw ParseError(line_no, "missing vertex count");
  return Graph(n, std::move(edges));
}

inline Graph read_edge_list(const std::string& text) {
  std::istringstream in(text);
  return read_edge_list(in);
}

inline SpdMatrix read_matrix(std::istream& in) {
  int line_no = 1;
  std::size_t n = 0;
  if (!(in >> n) || n < 2) throw ParseError(line_no, "expected matrix dimension >= 2");
  std::vector<double> a(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    ++line_no;
    for (std::size_t j = 0; j < n; ++j) {
      if (!(in >> a[i * n + j])) throw ParseError(line_no, "expected matrix entry (row truncated)");
    }
  }
  double extra;
  if (in >> extra) throw ParseError(line_no + 1, "trailing data after matrix");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(a[i * n + j] - a[j * n + i]) > 1e-8) {
        throw ParseError(static_cast<int>(i) + 2, "matrix is not symmetric");
      }
    }
  }
  return SpdMatrix(n, std::move(a));
}

inline SpdMatrix read_matrix(const std::string& text) {
  std::istringstream in(text);
  return read_matrix(in);
}

// ---- Verification oracles ----

/// Exact maximum independent-set size by recursive enumeration with
/// neighbor-mask pruning. Guarded to n <= 25.
inline int brute_force_stability(const Graph& G) {
  const int n = G.n();
  if (n > 25) throw std::invalid_argument("brute_force_stability: n > 25");
  std::vector<std::uint32_t> adj(n, 0);
  for (const auto& [i, j] : G.edges()) {
    adj[i] |= 1u << j;
    adj[j] |= 1u << i;
  }
  // Branch on the lowest remaining vertex: either drop it or take it and
  // drop its neighborhood.
  std::function<int(std::uint32_t)> mis = [&](std::uint32_t allowed) -> int {
    if (allowed == 0) return 0;
    const int v = std::countr_zero(allowed);
    const std::uint32_t bit = 1u << v;
    const int without = mis(allowed & ~bit);
    const int with = 1 + mis(allowed & ~(bit | adj[v]));
    return std::max(without, with);
  };
  return mis((n == 32) ? ~0u : ((1u << n) - 1u));
}

inline double smallest_eigenvalue_oracle(const SpdMatrix& A) {
  return jacobi_eigenvalues(A.n(), A.entries()).front();
}

}  // namespace rcg

#endif
