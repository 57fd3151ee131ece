#ifndef RCG_JACOBI_HPP
#define RCG_JACOBI_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace rcg {

/// Eigenvalues of a dense symmetric matrix (row-major, n x n) by the cyclic
/// Jacobi rotation method. Sweeps run until the off-diagonal Frobenius norm
/// drops below tol (scaled by the matrix norm). Returns the eigenvalues in
/// ascending order.
inline std::vector<double> jacobi_eigenvalues(std::size_t n, std::vector<double> a,
                                              double tol = 1e-12) {
  if (a.size() != n * n) throw std::invalid_argument("jacobi: matrix size mismatch");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(a[i * n + j] - a[j * n + i]) > 1e-10 * (1.0 + std::abs(a[i * n + j]))) {
        throw std::invalid_argument("jacobi: matrix is not symmetric");
      }
    }
  }

  double fro = 0.0;
  for (double v : a) fro += v * v;
  fro = std::sqrt(fro);
  const double target = tol * std::max(1.0, fro);

  auto off_norm = [&]() {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j) s += a[i * n + j] * a[i * n + j];
      }
    }
    return std::sqrt(s);
  };

  const int max_sweeps = 100;
  for (int sweep = 0; sweep < max_sweeps && off_norm() > target; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (apq == 0.0) continue;
        const double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k * n + p];
          const double akq = a[k * n + q];
          a[k * n + p] = c * akp - s * akq;
          a[k * n + q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p * n + k];
          const double aqk = a[q * n + k];
          a[p * n + k] = c * apk - s * aqk;
          a[q * n + k] = s * apk + c * aqk;
        }
      }
    }
  }

  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = a[i * n + i];
  std::sort(eig.begin(), eig.end());
  return eig;
}

}  // namespace rcg

#endif
