#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "heisflow/heisenberg.hpp"
#include "heisflow/types.hpp"

namespace heisflow {

/// The four one-parameter isometry groups of ℋ:
///   Ψ1ᵗ(x,y,z) = (x cos t − y sin t, x sin t + y cos t, z)
///   Ψ2ᵗ(x,y,z) = (t + x, y, ty/2 + z)
///   Ψ3ᵗ(x,y,z) = (x, t + y, −tx/2 + z)
///   Ψ4ᵗ(x,y,z) = (x, y, t + z)
enum class FlowId : int { Rotation = 1, TranslationX = 2, TranslationY = 3, Vertical = 4 };

inline FlowId flow_id_from_int(int i) {
  if (i < 1 || i > 4) throw Error("flow id must be in 1..4, got " + std::to_string(i));
  return static_cast<FlowId>(i);
}

/// c1 X1 + c2 X2 + c3 X3 + c4 X4 with
///   X1 = y∂x − x∂y, X2 = ∂x + (y/2)∂z, X3 = ∂y − (x/2)∂z, X4 = ∂z.
struct KillingField {
  std::array<double, 4> c{};

  static constexpr KillingField basis(int i) {
    KillingField k;
    k.c[static_cast<std::size_t>(i - 1)] = 1.0;
    return k;
  }
};

constexpr CoordVector killing_eval(const KillingField& X, const Point& p) {
  return CoordVector{p.y, -p.x, 0.0} * X.c[0] + CoordVector{1.0, 0.0, 0.5 * p.y} * X.c[1] +
         CoordVector{0.0, 1.0, -0.5 * p.x} * X.c[2] + CoordVector{0.0, 0.0, 1.0} * X.c[3];
}

/// Killing field whose flow is Ψᵢ. The counter-clockwise rotation Ψ1 is
/// generated by −X1; the translations by X2, X3, X4.
constexpr KillingField flow_generator(FlowId id) {
  KillingField k;
  switch (id) {
    case FlowId::Rotation: k.c[0] = -1.0; break;
    case FlowId::TranslationX: k.c[1] = 1.0; break;
    case FlowId::TranslationY: k.c[2] = 1.0; break;
    case FlowId::Vertical: k.c[3] = 1.0; break;
  }
  return k;
}

inline Point flow_apply(FlowId id, double t, const Point& p) {
  switch (id) {
    case FlowId::Rotation: {
      const double c = std::cos(t), s = std::sin(t);
      return {p.x * c - p.y * s, p.x * s + p.y * c, p.z};
    }
    case FlowId::TranslationX: return {t + p.x, p.y, 0.5 * t * p.y + p.z};
    case FlowId::TranslationY: return {p.x, t + p.y, -0.5 * t * p.x + p.z};
    case FlowId::Vertical: return {p.x, p.y, t + p.z};
  }
  throw Error("flow_apply: bad flow id");
}

/// dΨᵗ in coordinates. Every Ψᵗ is affine, so this does not depend on the point.
inline Mat3 flow_jacobian(FlowId id, double t) {
  Mat3 J = identity3();
  switch (id) {
    case FlowId::Rotation: {
      const double c = std::cos(t), s = std::sin(t);
      J[0][0] = c;
      J[0][1] = -s;
      J[1][0] = s;
      J[1][1] = c;
      break;
    }
    case FlowId::TranslationX: J[2][1] = 0.5 * t; break;
    case FlowId::TranslationY: J[2][0] = -0.5 * t; break;
    case FlowId::Vertical: break;
  }
  return J;
}

/// ∂Ψˢ(p)/∂s evaluated at s = t.
inline CoordVector flow_velocity(FlowId id, double t, const Point& p) {
  switch (id) {
    case FlowId::Rotation: {
      const double c = std::cos(t), s = std::sin(t);
      return {-p.x * s - p.y * c, p.x * c - p.y * s, 0.0};
    }
    case FlowId::TranslationX: return {1.0, 0.0, 0.5 * p.y};
    case FlowId::TranslationY: return {0.0, 1.0, -0.5 * p.x};
    case FlowId::Vertical: return {0.0, 0.0, 1.0};
  }
  throw Error("flow_velocity: bad flow id");
}

/// Ordered composition of single-generator flows; step k is Ψ_{id_k}^{scale_k·t}
/// and steps act in list order (the first entry is applied first).
struct IsometryFlow {
  std::vector<std::pair<FlowId, double>> steps;

  Point apply(double t, Point p) const {
    for (const auto& [id, scale] : steps) p = flow_apply(id, scale * t, p);
    return p;
  }

  Mat3 jacobian(double t) const {
    Mat3 J = identity3();
    for (const auto& [id, scale] : steps) J = multiply(flow_jacobian(id, scale * t), J);
    return J;
  }

  /// d/dt of apply(t, p).
  CoordVector velocity(double t, const Point& p) const {
    CoordVector v;
    Point q = p;
    for (const auto& [id, scale] : steps) {
      const Mat3 J = flow_jacobian(id, scale * t);
      v = heisflow::apply(J, v) + flow_velocity(id, scale * t, q) * scale;
      q = flow_apply(id, scale * t, q);
    }
    return v;
  }
};

/// |d/dt Ψᵢᵗ(p)|_{t=0} − X(p)| in the metric at p, derivative by a central
/// difference of step h.
inline double flow_generator_check(FlowId id, const KillingField& X, const Point& p, double h = 1e-5) {
  const CoordVector fd = (flow_apply(id, h, p) - flow_apply(id, -h, p)) / (2.0 * h);
  return metric_norm(p, fd - killing_eval(X, p));
}

/// max_ij |(Jᵀ g(Ψp) J − g(p))_ij| for a map with coordinate Jacobian J at p.
inline double pullback_defect(const Point& p, const Point& image, const Mat3& J) {
  const MetricMatrix gp = metric_at(p);
  const MetricMatrix gq = metric_at(image);
  double worst = 0.0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      double s = 0.0;
      for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t b = 0; b < 3; ++b) s += J[a][i] * gq[a][b] * J[b][j];
      worst = std::max(worst, std::abs(s - gp[i][j]));
    }
  return worst;
}

/// Isometry defect of Ψᵢᵗ at p over the coordinate basis, closed-form Jacobian.
inline double isometry_residual(FlowId id, double t, const Point& p) {
  return pullback_defect(p, flow_apply(id, t, p), flow_jacobian(id, t));
}

inline double isometry_residual(const IsometryFlow& flow, double t, const Point& p) {
  return pullback_defect(p, flow.apply(t, p), flow.jacobian(t));
}

/// Isometry defect of an arbitrary map, Jacobian by central differences.
inline double isometry_residual(const std::function<Point(const Point&)>& map, const Point& p,
                                double h = 1e-5) {
  Mat3 J{};
  for (std::size_t j = 0; j < 3; ++j) {
    const CoordVector e = CoordVector::unit(j) * h;
    const CoordVector col = (map(p + e) - map(p - e)) / (2.0 * h);
    for (std::size_t i = 0; i < 3; ++i) J[i][j] = col[i];
  }
  return pullback_defect(p, map(p), J);
}

using VectorField = std::function<CoordVector(const Point&)>;

/// max over frame vectors v, w of |⟨∇_v X, w⟩ + ⟨v, ∇_w X⟩| at p, with the
/// coordinate Christoffels and central-difference derivatives of X.
inline double killing_residual(const VectorField& X, const Point& p, double h = 1e-5) {
  std::array<CoordVector, 3> dX;  // dX[a] = ∂_a X
  for (std::size_t a = 0; a < 3; ++a) {
    const CoordVector e = CoordVector::unit(a) * h;
    dX[a] = (X(p + e) - X(p - e)) / (2.0 * h);
  }
  const ChristoffelTensor G = christoffel_at(p);
  const CoordVector Xp = X(p);
  auto nabla = [&](const CoordVector& v) {
    CoordVector r;
    for (std::size_t a = 0; a < 3; ++a) r += dX[a] * v[a];
    return r + christoffel_contract(G, v, Xp);
  };
  double worst = 0.0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      const CoordVector v = frame_field(p, i);
      const CoordVector w = frame_field(p, j);
      worst = std::max(worst, std::abs(inner(p, nabla(v), w) + inner(p, v, nabla(w))));
    }
  return worst;
}

inline double killing_residual(const KillingField& X, const Point& p, double h = 1e-5) {
  return killing_residual([X](const Point& q) { return killing_eval(X, q); }, p, h);
}

}  // namespace heisflow
