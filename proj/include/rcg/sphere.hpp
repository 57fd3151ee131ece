#ifndef RCG_SPHERE_HPP
#define RCG_SPHERE_HPP

#include <cmath>
#include <stdexcept>
#include <utility>

#include "rcg/vec.hpp"

namespace rcg {

// Below this angle exp/dexp switch to their series limits.
inline constexpr double kSmallAngle = 1e-8;

/// A point on S^{n-1}, stored in ambient coordinates with unit norm.
class Point {
 public:
  explicit Point(Vec coords) : coords_(std::move(coords)) {
    if (coords_.size() < 2) throw std::invalid_argument("Point: dimension must be >= 2");
    const double n = norm(coords_);
    if (!std::isfinite(n) || n == 0.0) throw std::invalid_argument("Point: norm must be finite and nonzero");
    if (std::abs(n - 1.0) > 1e-6) throw std::invalid_argument("Point: coordinates are not unit norm");
    for (auto& c : coords_) c /= n;
  }

  static Point normalized(Vec coords) {
    const double n = norm(coords);
    if (!std::isfinite(n) || n == 0.0) throw std::invalid_argument("Point: norm must be finite and nonzero");
    for (auto& c : coords) c /= n;
    Point p;
    p.coords_ = std::move(coords);
    return p;
  }

  const Vec& coords() const { return coords_; }
  std::size_t dim() const { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }

  friend bool operator==(const Point& a, const Point& b) = default;

 private:
  Point() = default;
  Vec coords_;
};

inline bool same_base(const Point& a, const Point& b, double tol = 1e-9) {
  if (a.dim() != b.dim()) return false;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (std::abs(a[i] - b[i]) > tol) return false;
  }
  return true;
}

/// A tangent vector at a recorded base point; the radial component is removed
/// on construction so <coords, base> = 0 holds exactly up to rounding.
class TangentVector {
 public:
  TangentVector(Point base, Vec coords) : base_(std::move(base)), coords_(std::move(coords)) {
    check_same_dim(base_.coords(), coords_);
    const double radial = dot(coords_, base_.coords());
    if (std::abs(radial) > 1e-6 * (1.0 + rcg::norm(coords_))) {
      throw std::invalid_argument("TangentVector: coordinates are not tangent at the base point");
    }
    axpy(coords_, -radial, base_.coords());
  }

  static TangentVector zero(const Point& base) {
    return TangentVector(base, Vec(base.dim(), 0.0));
  }

  const Point& base() const { return base_; }
  const Vec& coords() const { return coords_; }
  std::size_t dim() const { return coords_.size(); }
  double norm() const { return rcg::norm(coords_); }

 private:
  Point base_;
  Vec coords_;
};

inline void check_same_base(const TangentVector& a, const TangentVector& b) {
  if (!same_base(a.base(), b.base())) {
    throw std::invalid_argument("tangent vectors have different base points");
  }
}

inline TangentVector operator*(double c, const TangentVector& v) {
  return TangentVector(v.base(), scaled(v.coords(), c));
}

inline TangentVector operator-(const TangentVector& v) { return -1.0 * v; }

inline TangentVector operator+(const TangentVector& a, const TangentVector& b) {
  check_same_base(a, b);
  return TangentVector(a.base(), add(a.coords(), b.coords()));
}

inline TangentVector operator-(const TangentVector& a, const TangentVector& b) {
  check_same_base(a, b);
  return TangentVector(a.base(), sub(a.coords(), b.coords()));
}

/// Riemannian metric: the ambient dot product.
inline double inner(const TangentVector& a, const TangentVector& b) {
  check_same_base(a, b);
  return dot(a.coords(), b.coords());
}

/// Orthogonal projection of an ambient vector onto the tangent space at x.
inline TangentVector project_tangent(const Point& x, const Vec& v) {
  check_same_dim(x.coords(), v);
  Vec r(v);
  axpy(r, -dot(v, x.coords()), x.coords());
  return TangentVector(x, std::move(r));
}

inline TangentVector riemannian_grad(const Point& x, const Vec& euclid_grad) {
  return project_tangent(x, euclid_grad);
}

/// Exponential map: the great-circle arc from x with initial velocity eta.
inline Point exp_map(const Point& x, const TangentVector& eta) {
  if (!same_base(eta.base(), x)) throw std::invalid_argument("exp_map: eta is not based at x");
  const double s = eta.norm();
  double c, sinc;
  if (s < kSmallAngle) {
    c = 1.0 - 0.5 * s * s;
    sinc = 1.0 - s * s / 6.0;
  } else {
    c = std::cos(s);
    sinc = std::sin(s) / s;
  }
  Vec r = scaled(x.coords(), c);
  axpy(r, sinc, eta.coords());
  return Point::normalized(std::move(r));
}

/// Differential of the exponential map: the vector transport
/// T_eta(xi) = (d exp_x)_eta(xi), based at exp_map(x, eta).
inline TangentVector dexp(const Point& x, const TangentVector& eta, const TangentVector& xi) {
  if (!same_base(eta.base(), x) || !same_base(xi.base(), x)) {
    throw std::invalid_argument("dexp: eta and xi must be based at x");
  }
  const Point y = exp_map(x, eta);
  const double s = eta.norm();
  if (s < kSmallAngle) {
    return project_tangent(y, xi.coords());
  }
  const Vec u = scaled(eta.coords(), 1.0 / s);
  const double a = dot(xi.coords(), u);
  // Radial part rotates with the geodesic, the orthogonal part is a Jacobi
  // field scaled by sin(s)/s.
  Vec w(xi.coords());
  axpy(w, -a, u);
  Vec r = scaled(x.coords(), -a * std::sin(s));
  axpy(r, a * std::cos(s), u);
  axpy(r, std::sin(s) / s, w);
  return TangentVector(y, std::move(r));
}

/// Geodesic distance in radians, in [0, pi].
inline double distance(const Point& x, const Point& y) {
  double c = dot(x.coords(), y.coords());
  if (c > 1.0) c = 1.0;
  if (c < -1.0) c = -1.0;
  return std::acos(c);
}

}  // namespace rcg

#endif
