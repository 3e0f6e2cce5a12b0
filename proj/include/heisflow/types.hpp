#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace heisflow {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A function was evaluated outside the set where it is defined
/// (log of a non-positive number, parameter outside a rectangle, ...).
class DomainError : public Error {
 public:
  DomainError(const std::string& what, double where)
      : Error(what), where_(where) {}
  explicit DomainError(const std::string& what) : Error(what) {}

  /// Offending parameter value, NaN when not applicable.
  double where() const noexcept { return where_; }

 private:
  double where_ = std::nan("");
};

/// Φu × Φv vanished (or a curve velocity vanished).
class DegenerateError : public Error {
 public:
  using Error::Error;
};

/// Fixed-size triple of reals. The tag keeps coordinate components and
/// frame coefficients from being mixed up by accident.
template <class Tag>
struct Triple {
  std::array<double, 3> c{};

  constexpr Triple() = default;
  constexpr Triple(double a, double b, double d) : c{a, b, d} {}

  constexpr double& operator[](std::size_t i) { return c[i]; }
  constexpr double operator[](std::size_t i) const { return c[i]; }

  constexpr Triple& operator+=(const Triple& o) {
    for (std::size_t i = 0; i < 3; ++i) c[i] += o.c[i];
    return *this;
  }
  constexpr Triple& operator-=(const Triple& o) {
    for (std::size_t i = 0; i < 3; ++i) c[i] -= o.c[i];
    return *this;
  }
  constexpr Triple& operator*=(double s) {
    for (auto& x : c) x *= s;
    return *this;
  }

  friend constexpr Triple operator+(Triple a, const Triple& b) { return a += b; }
  friend constexpr Triple operator-(Triple a, const Triple& b) { return a -= b; }
  friend constexpr Triple operator-(Triple a) { return a *= -1.0; }
  friend constexpr Triple operator*(Triple a, double s) { return a *= s; }
  friend constexpr Triple operator*(double s, Triple a) { return a *= s; }
  friend constexpr Triple operator/(Triple a, double s) { return a *= 1.0 / s; }
  friend constexpr bool operator==(const Triple&, const Triple&) = default;

  /// Unit triple e_i.
  static constexpr Triple unit(std::size_t i) {
    Triple t;
    t.c[i] = 1.0;
    return t;
  }
};

struct CoordTag {};
struct FrameTag {};

/// Tangent vector components with respect to ∂x, ∂y, ∂z.
using CoordVector = Triple<CoordTag>;

/// Tangent vector coefficients with respect to the orthonormal frame E1, E2, E3.
using FrameVector = Triple<FrameTag>;

/// Point of ℝ³ = ℋ.
struct Point {
  double x = 0.0, y = 0.0, z = 0.0;

  constexpr double operator[](std::size_t i) const { return i == 0 ? x : (i == 1 ? y : z); }
  constexpr double& operator[](std::size_t i) { return i == 0 ? x : (i == 1 ? y : z); }

  friend constexpr bool operator==(const Point&, const Point&) = default;
};

/// Point displaced along coordinate components (pure coordinate arithmetic).
constexpr Point operator+(const Point& p, const CoordVector& v) {
  return {p.x + v[0], p.y + v[1], p.z + v[2]};
}
constexpr Point operator-(const Point& p, const CoordVector& v) {
  return {p.x - v[0], p.y - v[1], p.z - v[2]};
}
constexpr CoordVector operator-(const Point& a, const Point& b) {
  return {a.x - b.x, a.y - b.y, a.z - b.z};
}

using Mat3 = std::array<std::array<double, 3>, 3>;

/// Euclidean dot product of the components.
template <class Tag>
constexpr double dot(const Triple<Tag>& a, const Triple<Tag>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

template <class Tag>
inline double norm(const Triple<Tag>& a) {
  return std::sqrt(dot(a, a));
}

template <class Tag>
constexpr Triple<Tag> cross(const Triple<Tag>& a, const Triple<Tag>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

template <class Tag>
inline double max_abs(const Triple<Tag>& a) {
  return std::max({std::abs(a[0]), std::abs(a[1]), std::abs(a[2])});
}

inline double distance_euclid(const Point& a, const Point& b) { return norm(a - b); }

constexpr CoordVector apply(const Mat3& m, const CoordVector& v) {
  CoordVector r;
  for (std::size_t i = 0; i < 3; ++i)
    r[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2];
  return r;
}

constexpr Mat3 multiply(const Mat3& a, const Mat3& b) {
  Mat3 r{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k) r[i][j] += a[i][k] * b[k][j];
  return r;
}

constexpr Mat3 identity3() { return {{{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}}}; }

constexpr double determinant(const Mat3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

/// Inverse by cofactors; throws on a singular matrix.
inline Mat3 inverse(const Mat3& m) {
  const double det = determinant(m);
  if (det == 0.0 || !std::isfinite(det)) throw Error("inverse: singular 3x3 matrix");
  Mat3 r{};
  r[0][0] = (m[1][1] * m[2][2] - m[1][2] * m[2][1]) / det;
  r[0][1] = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) / det;
  r[0][2] = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) / det;
  r[1][0] = (m[1][2] * m[2][0] - m[1][0] * m[2][2]) / det;
  r[1][1] = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) / det;
  r[1][2] = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) / det;
  r[2][0] = (m[1][0] * m[2][1] - m[1][1] * m[2][0]) / det;
  r[2][1] = (m[0][1] * m[2][0] - m[0][0] * m[2][1]) / det;
  r[2][2] = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) / det;
  return r;
}

/// Uniform grid of n points on [a, b].
inline std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> g(static_cast<std::size_t>(std::max(n, 0)));
  for (int i = 0; i < n; ++i)
    g[static_cast<std::size_t>(i)] = n == 1 ? a : (i == n - 1 ? b : a + (b - a) * i / (n - 1));
  return g;
}

}  // namespace heisflow
