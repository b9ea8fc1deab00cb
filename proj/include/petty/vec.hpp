#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "petty/error.hpp"

namespace petty {

/// Planar point / vector.
struct Vec2 {
  double x{0.0};
  double y{0.0};

  constexpr Vec2() = default;
  constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

  constexpr Vec2 operator+(const Vec2& r) const { return {x + r.x, y + r.y}; }
  constexpr Vec2 operator-(const Vec2& r) const { return {x - r.x, y - r.y}; }
  constexpr Vec2 operator-() const { return {-x, -y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
  constexpr Vec2& operator+=(const Vec2& r) { x += r.x; y += r.y; return *this; }
  constexpr Vec2& operator-=(const Vec2& r) { x -= r.x; y -= r.y; return *this; }
  constexpr bool operator==(const Vec2&) const = default;

  double norm() const { return std::hypot(x, y); }
};

constexpr Vec2 operator*(double s, const Vec2& v) { return v * s; }
constexpr double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
/// z-component of the 3D cross product.
constexpr double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
/// Orientation of (a, b, c): > 0 for a left turn.
constexpr double orient(const Vec2& a, const Vec2& b, const Vec2& c) { return cross(b - a, c - a); }
/// Rotate by +90 degrees.
constexpr Vec2 perp(const Vec2& v) { return {-v.y, v.x}; }

/// Vector in R^2 or R^3 with the dimension carried at runtime.
struct VecN {
  int dim{2};
  std::array<double, 3> c{0.0, 0.0, 0.0};

  constexpr VecN() = default;
  constexpr explicit VecN(int n) : dim(n) {}
  constexpr VecN(double x, double y) : dim(2), c{x, y, 0.0} {}
  constexpr VecN(double x, double y, double z) : dim(3), c{x, y, z} {}
  constexpr VecN(const Vec2& v) : dim(2), c{v.x, v.y, 0.0} {}  // NOLINT(implicit)

  constexpr double operator[](int i) const { return c[static_cast<std::size_t>(i)]; }
  constexpr double& operator[](int i) { return c[static_cast<std::size_t>(i)]; }

  constexpr VecN operator+(const VecN& r) const {
    VecN o(dim);
    for (int i = 0; i < dim; ++i) o[i] = (*this)[i] + r[i];
    return o;
  }
  constexpr VecN operator-(const VecN& r) const {
    VecN o(dim);
    for (int i = 0; i < dim; ++i) o[i] = (*this)[i] - r[i];
    return o;
  }
  constexpr VecN operator-() const {
    VecN o(dim);
    for (int i = 0; i < dim; ++i) o[i] = -(*this)[i];
    return o;
  }
  constexpr VecN operator*(double s) const {
    VecN o(dim);
    for (int i = 0; i < dim; ++i) o[i] = (*this)[i] * s;
    return o;
  }
  constexpr bool operator==(const VecN&) const = default;

  Vec2 xy() const { return {c[0], c[1]}; }
  double norm() const { return std::sqrt(c[0] * c[0] + c[1] * c[1] + c[2] * c[2]); }

  static constexpr VecN unit(int n, int axis) {
    VecN v(n);
    v[axis] = 1.0;
    return v;
  }
};

constexpr VecN operator*(double s, const VecN& v) { return v * s; }

constexpr double dot(const VecN& a, const VecN& b) {
  double s = 0.0;
  for (int i = 0; i < a.dim; ++i) s += a[i] * b[i];
  return s;
}

inline VecN cross(const VecN& a, const VecN& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

/// Unit vector on S^{n-1}.
class Direction {
 public:
  static constexpr double kUnitTolerance = 1e-12;

  /// Normalizes `v`; zero or non-finite vectors are a domain error.
  static Direction normalize(const VecN& v) {
    const double n = v.norm();
    if (!(n > 0.0) || !std::isfinite(n)) fail(ErrorKind::domain, "cannot normalize a zero or non-finite vector");
    return Direction(v * (1.0 / n));
  }

  /// Accepts `v` as-is after checking |v| = 1.
  static Direction checked(const VecN& v) {
    if (std::abs(v.norm() - 1.0) > kUnitTolerance) fail(ErrorKind::domain, "direction is not unit length");
    return Direction(v);
  }

  static Direction from_angle(double theta) { return Direction(VecN(std::cos(theta), std::sin(theta))); }
  static Direction axis(int n, int k) { return Direction(VecN::unit(n, k)); }

  int dim() const { return v_.dim; }
  const VecN& vec() const { return v_; }
  double operator[](int i) const { return v_[i]; }
  Vec2 xy() const { return v_.xy(); }
  Direction operator-() const { return Direction(-v_); }

 private:
  explicit Direction(const VecN& v) : v_(v) {}
  VecN v_;
};

/// 2x2 matrix, row-major.
struct Mat2 {
  double a{1.0}, b{0.0}, c{0.0}, d{1.0};

  constexpr Vec2 operator*(const Vec2& v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
  constexpr Mat2 operator*(const Mat2& m) const {
    return {a * m.a + b * m.c, a * m.b + b * m.d, c * m.a + d * m.c, c * m.b + d * m.d};
  }
  constexpr double det() const { return a * d - b * c; }
  constexpr Mat2 transpose() const { return {a, c, b, d}; }
  Mat2 inverse() const {
    const double dt = det();
    if (dt == 0.0) fail(ErrorKind::domain, "singular matrix");
    return {d / dt, -b / dt, -c / dt, a / dt};
  }
  /// A^{-t}
  Mat2 inverse_transpose() const { return inverse().transpose(); }

  static Mat2 rotation(double theta) {
    const double cs = std::cos(theta), sn = std::sin(theta);
    return {cs, -sn, sn, cs};
  }
  static constexpr Mat2 shear_x(double s) { return {1.0, s, 0.0, 1.0}; }
  static constexpr Mat2 shear_y(double s) { return {1.0, 0.0, s, 1.0}; }
};

/// Proper rotation R. `to_frame` maps world coordinates to frame coordinates
/// (R^T x); the last frame axis is the distinguished y direction.
class RigidFrame {
 public:
  static constexpr double kOrthoTolerance = 1e-12;

  static RigidFrame identity(int n) {
    RigidFrame f(n);
    for (int i = 0; i < n; ++i) f.cols_[static_cast<std::size_t>(i)] = VecN::unit(n, i);
    return f;
  }

  /// Frame whose last axis is `u`.
  static RigidFrame with_last_axis(const Direction& u) {
    const int n = u.dim();
    RigidFrame f(n);
    if (n == 2) {
      f.cols_[0] = VecN(u[1], -u[0]);
      f.cols_[1] = u.vec();
    } else {
      // Complete u to a right-handed orthonormal basis (c0, c1, u).
      const VecN& w = u.vec();
      const int k = std::abs(w[0]) <= std::abs(w[1]) && std::abs(w[0]) <= std::abs(w[2]) ? 0
                    : std::abs(w[1]) <= std::abs(w[2])                                   ? 1
                                                                                         : 2;
      VecN c0 = cross(VecN::unit(3, k), w);
      c0 = c0 * (1.0 / c0.norm());
      const VecN c1 = cross(w, c0);
      f.cols_[0] = c0;
      f.cols_[1] = c1;
      f.cols_[2] = w;
    }
    return f;
  }

  /// Builds from explicit columns; rejects non-orthonormal or improper input.
  static RigidFrame from_columns(const std::array<VecN, 3>& cols, int n) {
    RigidFrame f(n);
    f.cols_ = cols;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double g = dot(cols[static_cast<std::size_t>(i)], cols[static_cast<std::size_t>(j)]);
        if (std::abs(g - (i == j ? 1.0 : 0.0)) > kOrthoTolerance)
          fail(ErrorKind::invalid_input, "frame columns are not orthonormal");
      }
    if (f.det() < 0.0) fail(ErrorKind::invalid_input, "frame is not orientation preserving");
    return f;
  }

  int dim() const { return n_; }
  const VecN& axis(int i) const { return cols_[static_cast<std::size_t>(i)]; }
  const VecN& last_axis() const { return axis(n_ - 1); }

  VecN to_frame(const VecN& x) const {
    VecN o(n_);
    for (int i = 0; i < n_; ++i) o[i] = dot(axis(i), x);
    return o;
  }
  VecN to_world(const VecN& x) const {
    VecN o(n_);
    for (int i = 0; i < n_; ++i)
      for (int r = 0; r < n_; ++r) o[r] += axis(i)[r] * x[i];
    return o;
  }
  Vec2 to_frame(const Vec2& x) const { return to_frame(VecN(x)).xy(); }
  Vec2 to_world(const Vec2& x) const { return to_world(VecN(x)).xy(); }

  double det() const {
    if (n_ == 2) return axis(0)[0] * axis(1)[1] - axis(0)[1] * axis(1)[0];
    return dot(cross(axis(0), axis(1)), axis(2));
  }

 private:
  explicit RigidFrame(int n) : n_(n) {
    if (n != 2 && n != 3) fail(ErrorKind::domain, "only dimensions 2 and 3 are supported");
  }
  int n_;
  std::array<VecN, 3> cols_{};
};

/// Volume of the unit ball in R^n (n = 1, 2, 3).
constexpr double unit_ball_volume(int n) {
  switch (n) {
    case 1: return 2.0;
    case 2: return std::numbers::pi;
    case 3: return 4.0 * std::numbers::pi / 3.0;
    default: return 0.0;
  }
}

}  // namespace petty
