#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <span>
#include <vector>

#include "heisflow/heisenberg.hpp"
#include "heisflow/ode.hpp"
#include "heisflow/types.hpp"

namespace heisflow {

/// Parameters of the helix family issuing from the origin; C must be nonzero.
struct GeodesicParams {
  double A = 0.0, B = 0.0, C = 1.0;
};

struct GeodesicSample {
  double u = 0.0;
  Point p;
  CoordVector velocity;
};

using GeodesicPath = std::vector<GeodesicSample>;

inline void require_helix(const GeodesicParams& g, const char* who) {
  if (g.C == 0.0) throw DomainError(std::string(who) + ": C = 0 (use geodesic_horizontal)", g.C);
}

/// Marenich's helix formulas, verbatim:
///   x = A/(2C) [sin(2Cu + B) − sin B]
///   y = A/(2C) [cos B − cos(2Cu + B)]
///   z = (1 + C²)/(2C) u − (1 − C²)/(4C²) sin(2Cu)
///
/// These are geodesics of ℋ only in the limits A = 0, C = ±1 (vertical lines);
/// for A ≠ 0 the z-law belongs to a differently normalized metric. See
/// helix_geodesic for the helices of this metric.
inline Point geodesic_closed_form(const GeodesicParams& g, double u) {
  require_helix(g, "geodesic_closed_form");
  const double k = g.A / (2.0 * g.C);
  const double th = 2.0 * g.C * u + g.B;
  return {k * (std::sin(th) - std::sin(g.B)), k * (std::cos(g.B) - std::cos(th)),
          (1.0 + g.C * g.C) / (2.0 * g.C) * u -
              (1.0 - g.C * g.C) / (4.0 * g.C * g.C) * std::sin(2.0 * g.C * u)};
}

/// Derivative of geodesic_closed_form at u = 0: (A cos B, A sin B, C).
inline CoordVector geodesic_closed_form_velocity0(const GeodesicParams& g) {
  require_helix(g, "geodesic_closed_form_velocity0");
  return {g.A * std::cos(g.B), g.A * std::sin(g.B),
          (1.0 + g.C * g.C) / (2.0 * g.C) - (1.0 - g.C * g.C) / (2.0 * g.C)};
}

/// Geodesic of ℋ from the origin with the same horizontal projection as
/// geodesic_closed_form. Along it the frame coefficients are
/// (A cos(2Cu+B), A sin(2Cu+B), 2C), which gives
///   z = 2Cu + A²/(4C) (u − sin(2Cu)/(2C)).
inline Point helix_geodesic(const GeodesicParams& g, double u) {
  require_helix(g, "helix_geodesic");
  const double k = g.A / (2.0 * g.C);
  const double th = 2.0 * g.C * u + g.B;
  return {k * (std::sin(th) - std::sin(g.B)), k * (std::cos(g.B) - std::cos(th)),
          2.0 * g.C * u + g.A * g.A / (4.0 * g.C) * (u - std::sin(2.0 * g.C * u) / (2.0 * g.C))};
}

inline CoordVector helix_geodesic_velocity0(const GeodesicParams& g) {
  return {g.A * std::cos(g.B), g.A * std::sin(g.B), 2.0 * g.C};
}

/// Horizontal line (Au, Bu, 0).
constexpr Point geodesic_horizontal(double A, double B, double u) { return {A * u, B * u, 0.0}; }

/// Fixed-step RK4 for γ̈ᵏ + Γᵏᵢⱼ γ̇ⁱ γ̇ʲ = 0 over u ∈ [0, length].
inline GeodesicPath geodesic_integrate(const Point& p0, const CoordVector& v0, double length,
                                       int steps) {
  if (steps < 2) throw Error("geodesic_integrate: steps must be >= 2");
  if (metric_norm(p0, v0) <= 0.0) throw DegenerateError("geodesic_integrate: zero initial velocity");

  using State = std::array<double, 6>;
  auto rhs = [](double, const State& s) {
    const Point p{s[0], s[1], s[2]};
    const CoordVector v{s[3], s[4], s[5]};
    const CoordVector acc = -christoffel_contract(christoffel_at(p), v, v);
    return State{v[0], v[1], v[2], acc[0], acc[1], acc[2]};
  };

  const double h = length / steps;
  State s{p0.x, p0.y, p0.z, v0[0], v0[1], v0[2]};
  GeodesicPath path;
  path.reserve(static_cast<std::size_t>(steps) + 1);
  auto record = [&](double u) { path.push_back({u, {s[0], s[1], s[2]}, {s[3], s[4], s[5]}}); };
  record(0.0);
  for (int i = 0; i < steps; ++i) {
    s = rk4_step(rhs, i * h, s, h);
    record((i + 1) * h);
  }
  return path;
}

using Curve = std::function<Point(double)>;

/// max over interior grid nodes of |γ̈ᵏ + Γᵏᵢⱼ γ̇ⁱ γ̇ʲ| (max component), with
/// five-point derivative stencils of step h evaluated on the curve itself.
inline double geodesic_residual(const Curve& curve, std::span<const double> grid, double h = 1e-2) {
  if (grid.size() < 3) throw Error("geodesic_residual: grid needs at least 3 points");
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
    const double u = grid[i];
    const Point p = curve(u);
    const Point pp = curve(u + h), pm = curve(u - h), p2p = curve(u + 2 * h), p2m = curve(u - 2 * h);
    CoordVector d1, d2;
    for (std::size_t k = 0; k < 3; ++k) {
      d1[k] = (-p2p[k] + 8.0 * pp[k] - 8.0 * pm[k] + p2m[k]) / (12.0 * h);
      d2[k] = (-p2p[k] + 16.0 * pp[k] - 30.0 * p[k] + 16.0 * pm[k] - p2m[k]) / (12.0 * h * h);
    }
    worst = std::max(worst, max_abs(d2 + christoffel_contract(christoffel_at(p), d1, d1)));
  }
  return worst;
}

}  // namespace heisflow
