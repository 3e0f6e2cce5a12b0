#pragma once

// Riemannian Heisenberg group: ℝ³ with the left-invariant metric
//   dx² + dy² + (½y dx − ½x dy + dz)²
// and its orthonormal left-invariant frame
//   E1 = ∂x − (y/2)∂z,  E2 = ∂y + (x/2)∂z,  E3 = ∂z,   [E1, E2] = E3.

#include <array>
#include <cstddef>
#include <string>

#include "heisflow/types.hpp"

namespace heisflow {

/// Symmetric 3×3 metric matrix g_ij at a point.
using MetricMatrix = Mat3;

/// Coordinate Christoffel symbols, indexed gamma[k][i][j] = Γ^k_ij.
using ChristoffelTensor = std::array<Mat3, 3>;

/// Frame connection coefficients: table[i][j] = ∇_{E_{i+1}} E_{j+1}.
using ConnectionTable = std::array<std::array<FrameVector, 3>, 3>;

/// Components of the contact one-form ½y dx − ½x dy + dz at p.
constexpr CoordVector contact_form(const Point& p) { return {0.5 * p.y, -0.5 * p.x, 1.0}; }

/// g = dx² + dy² + θ⊗θ expanded in closed form.
constexpr MetricMatrix metric_at(const Point& p) {
  const CoordVector th = contact_form(p);
  MetricMatrix g{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) g[i][j] = th[i] * th[j];
  g[0][0] += 1.0;
  g[1][1] += 1.0;
  return g;
}

constexpr double inner(const Point& p, const CoordVector& v, const CoordVector& w) {
  const MetricMatrix g = metric_at(p);
  double s = 0.0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) s += v[i] * g[i][j] * w[j];
  return s;
}

/// ∂x = E1 + (y/2)E3, ∂y = E2 − (x/2)E3, ∂z = E3.
constexpr FrameVector coord_to_frame(const Point& p, const CoordVector& v) {
  return {v[0], v[1], v[2] + 0.5 * p.y * v[0] - 0.5 * p.x * v[1]};
}

constexpr CoordVector frame_to_coord(const Point& p, const FrameVector& a) {
  return {a[0], a[1], a[2] - 0.5 * p.y * a[0] + 0.5 * p.x * a[1]};
}

/// Coordinate components of E_{i+1} at p.
constexpr CoordVector frame_field(const Point& p, std::size_t i) {
  return frame_to_coord(p, FrameVector::unit(i));
}

/// Frame inner product: the frame is orthonormal, so this is the Euclidean dot.
constexpr double inner(const FrameVector& a, const FrameVector& b) { return dot(a, b); }

/// E2×E3 = E1, E3×E1 = E2, E1×E2 = E3: the Euclidean cross product on coefficients.
constexpr FrameVector frame_cross(const FrameVector& a, const FrameVector& b) { return cross(a, b); }

constexpr ConnectionTable connection_table() {
  ConnectionTable t{};
  t[0][1] = {0.0, 0.0, 0.5};   // ∇_{E1}E2 =  ½E3
  t[1][0] = {0.0, 0.0, -0.5};  // ∇_{E2}E1 = −½E3
  t[0][2] = {0.0, -0.5, 0.0};  // ∇_{E1}E3 = −½E2
  t[2][0] = {0.0, -0.5, 0.0};  // ∇_{E3}E1 = −½E2
  t[1][2] = {0.5, 0.0, 0.0};   // ∇_{E2}E3 =  ½E1
  t[2][1] = {0.5, 0.0, 0.0};   // ∇_{E3}E2 =  ½E1
  return t;
}

/// ∇_{E_i}E_j with 1-based indices.
inline FrameVector covderiv_frame(int i, int j) {
  if (i < 1 || i > 3 || j < 1 || j > 3)
    throw Error("covderiv_frame: frame index out of range: (" + std::to_string(i) + "," +
                std::to_string(j) + ")");
  return connection_table()[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
}

/// ∇_dir W for a field W = Σ w_k E_k, given dw = (dir·∇w_1, dir·∇w_2, dir·∇w_3).
constexpr FrameVector covariant_derivative(const FrameVector& w, const FrameVector& dw,
                                           const FrameVector& dir) {
  constexpr ConnectionTable table = connection_table();
  FrameVector r = dw;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t k = 0; k < 3; ++k) r += (dir[i] * w[k]) * table[i][k];
  return r;
}

/// Γ^k_ij of the coordinate metric, closed form. Symmetric in i, j.
constexpr ChristoffelTensor christoffel_at(const Point& p) {
  const double x = p.x, y = p.y;
  ChristoffelTensor G{};
  auto set = [&G](std::size_t k, std::size_t i, std::size_t j, double value) {
    G[k][i][j] = value;
    G[k][j][i] = value;
  };
  set(0, 0, 1, y / 4.0);
  set(0, 1, 1, -x / 2.0);
  set(0, 1, 2, 0.5);
  set(1, 0, 0, -y / 2.0);
  set(1, 0, 1, x / 4.0);
  set(1, 0, 2, -0.5);
  set(2, 0, 0, -x * y / 4.0);
  set(2, 0, 1, (x * x - y * y) / 8.0);
  set(2, 0, 2, -x / 4.0);
  set(2, 1, 1, x * y / 4.0);
  set(2, 1, 2, -y / 4.0);
  return G;
}

/// Γ^k_ij v^i w^j.
constexpr CoordVector christoffel_contract(const ChristoffelTensor& G, const CoordVector& v,
                                           const CoordVector& w) {
  CoordVector r;
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) r[k] += G[k][i][j] * v[i] * w[j];
  return r;
}

/// Metric norm of a coordinate vector.
inline double metric_norm(const Point& p, const CoordVector& v) {
  return std::sqrt(inner(p, v, v));
}

}  // namespace heisflow
