#pragma once

#include <cmath>
#include <functional>
#include <optional>

#include "heisflow/heisenberg.hpp"
#include "heisflow/types.hpp"

namespace heisflow {

/// Closed parameter rectangle [u0,u1]×[v0,v1].
struct ParamRect {
  double u0 = -1.0, u1 = 1.0;
  double v0 = -1.0, v1 = 1.0;

  constexpr bool contains(double u, double v, double margin = 0.0) const {
    return u >= u0 + margin && u <= u1 - margin && v >= v0 + margin && v <= v1 - margin;
  }
};

/// Position and coordinate partials of Φ(u, v, t), all w.r.t. ∂x, ∂y, ∂z.
struct CoordJet {
  Point p;
  CoordVector du, dv, dt;
  CoordVector duu, duv, dvv;
};

enum class DerivativeMode { Analytic, FiniteDifference };

/// A time-dependent immersion (u, v, t) ↦ Φ.
///
/// In analytic mode `analytic` must be set and supplies every partial; in
/// finite-difference mode only `position` is used, with central stencils of
/// step `fd_step1` (first partials) and `fd_step2` (second partials).
struct ImmersionSpec {
  std::function<Point(double, double, double)> position;
  std::function<CoordJet(double, double, double)> analytic;
  DerivativeMode mode = DerivativeMode::Analytic;
  ParamRect domain;
  double fd_step1 = 1e-5;
  double fd_step2 = 1e-4;
};

/// Threshold on |Φu × Φv| below which a jet is flagged degenerate.
inline constexpr double kDegenerateThreshold = 1e-12;

/// Jet in the orthonormal frame at Φ(u, v, t).
struct SurfaceJet2 {
  double u = 0.0, v = 0.0, t = 0.0;
  Point p;
  FrameVector phi_u, phi_v, phi_t;
  // Coordinate second partials; frame coefficient derivatives are built on demand.
  CoordVector coord_u, coord_v;
  CoordVector coord_uu, coord_uv, coord_vv;
  bool degenerate = false;
};

struct FundamentalForms {
  double E = 0.0, F = 0.0, G = 0.0;
  double l = 0.0, m = 0.0, n = 0.0;

  double area_density_sq() const { return E * G - F * F; }
};

namespace detail {

inline CoordJet fd_jet(const ImmersionSpec& spec, double u, double v, double t) {
  const auto& X = spec.position;
  const double h = spec.fd_step1;
  const double k = spec.fd_step2;
  CoordJet j;
  j.p = X(u, v, t);
  j.du = (X(u + h, v, t) - X(u - h, v, t)) / (2.0 * h);
  j.dv = (X(u, v + h, t) - X(u, v - h, t)) / (2.0 * h);
  j.dt = (X(u, v, t + h) - X(u, v, t - h)) / (2.0 * h);
  const Point c = X(u, v, t);
  j.duu = ((X(u + k, v, t) - c) - (c - X(u - k, v, t))) / (k * k);
  j.dvv = ((X(u, v + k, t) - c) - (c - X(u, v - k, t))) / (k * k);
  j.duv = ((X(u + k, v + k, t) - X(u + k, v - k, t)) - (X(u - k, v + k, t) - X(u - k, v - k, t))) /
          (4.0 * k * k);
  return j;
}

/// Derivative along s of the frame coefficients of a coordinate field W(u,v)
/// carried by the surface: ∂s(M(Φ) W) = M(Φ) ∂sW + (∂sM) W.
inline FrameVector frame_coeff_derivative(const Point& p, const CoordVector& w, const CoordVector& dw,
                                          const CoordVector& phi_s) {
  FrameVector r = coord_to_frame(p, dw);
  r[2] += 0.5 * (phi_s[1] * w[0] - phi_s[0] * w[1]);
  return r;
}

}  // namespace detail

/// Jet of the immersion at (u, v, t). Throws DomainError outside the rectangle
/// (shrunk by the stencil reach in FD mode). Degenerate points are flagged.
inline SurfaceJet2 jet_at(const ImmersionSpec& spec, double u, double v, double t) {
  const bool fd = spec.mode == DerivativeMode::FiniteDifference;
  const double margin = fd ? std::max(spec.fd_step1, spec.fd_step2) : 0.0;
  if (!spec.domain.contains(u, v, margin))
    throw DomainError("jet_at: (u, v) outside the parameter rectangle", u);

  CoordJet cj;
  if (fd) {
    if (!spec.position) throw Error("jet_at: finite-difference mode needs a position evaluator");
    cj = detail::fd_jet(spec, u, v, t);
  } else {
    if (!spec.analytic) throw Error("jet_at: analytic mode needs analytic partials");
    cj = spec.analytic(u, v, t);
  }

  SurfaceJet2 j;
  j.u = u;
  j.v = v;
  j.t = t;
  j.p = cj.p;
  j.phi_u = coord_to_frame(cj.p, cj.du);
  j.phi_v = coord_to_frame(cj.p, cj.dv);
  j.phi_t = coord_to_frame(cj.p, cj.dt);
  j.coord_u = cj.du;
  j.coord_v = cj.dv;
  j.coord_uu = cj.duu;
  j.coord_uv = cj.duv;
  j.coord_vv = cj.dvv;
  j.degenerate = norm(frame_cross(j.phi_u, j.phi_v)) < kDegenerateThreshold;
  return j;
}

inline void require_regular(const SurfaceJet2& jet, const char* who) {
  if (jet.degenerate) throw DegenerateError(std::string(who) + ": degenerate jet (|Φu×Φv| < 1e-12)");
}

/// N = Φu×Φv / |Φu×Φv|, frame coefficients.
inline FrameVector unit_normal(const SurfaceJet2& jet) {
  require_regular(jet, "unit_normal");
  const FrameVector c = frame_cross(jet.phi_u, jet.phi_v);
  return c / norm(c);
}

/// Frame-coefficient derivatives of Φu and Φv along u and v.
struct FrameDerivatives {
  FrameVector phi_u_u, phi_u_v, phi_v_u, phi_v_v;
};

inline FrameDerivatives frame_derivatives(const SurfaceJet2& jet) {
  using detail::frame_coeff_derivative;
  FrameDerivatives d;
  d.phi_u_u = frame_coeff_derivative(jet.p, jet.coord_u, jet.coord_uu, jet.coord_u);
  d.phi_u_v = frame_coeff_derivative(jet.p, jet.coord_u, jet.coord_uv, jet.coord_v);
  d.phi_v_u = frame_coeff_derivative(jet.p, jet.coord_v, jet.coord_uv, jet.coord_u);
  d.phi_v_v = frame_coeff_derivative(jet.p, jet.coord_v, jet.coord_vv, jet.coord_v);
  return d;
}

/// ∇_{Φu}N via the Leibniz rule on the frame coefficients of N.
inline FrameVector normal_derivative_u(const SurfaceJet2& jet) {
  require_regular(jet, "normal_derivative_u");
  const FrameDerivatives d = frame_derivatives(jet);
  const FrameVector c = frame_cross(jet.phi_u, jet.phi_v);
  const double len = norm(c);
  const FrameVector N = c / len;
  const FrameVector c_u = frame_cross(d.phi_u_u, jet.phi_v) + frame_cross(jet.phi_u, d.phi_v_u);
  const FrameVector N_u = (c_u - N * dot(N, c_u)) / len;
  return covariant_derivative(N, N_u, jet.phi_u);
}

/// E, F, G and l = −⟨Φu, ∇_{Φu}N⟩, m = ⟨∇_{Φv}Φu, N⟩, n = ⟨∇_{Φv}Φv, N⟩.
inline FundamentalForms fundamental_forms(const SurfaceJet2& jet) {
  require_regular(jet, "fundamental_forms");
  const FrameDerivatives d = frame_derivatives(jet);
  const FrameVector N = unit_normal(jet);
  FundamentalForms ff;
  ff.E = inner(jet.phi_u, jet.phi_u);
  ff.F = inner(jet.phi_u, jet.phi_v);
  ff.G = inner(jet.phi_v, jet.phi_v);
  ff.l = -inner(jet.phi_u, normal_derivative_u(jet));
  ff.m = inner(covariant_derivative(jet.phi_u, d.phi_u_v, jet.phi_v), N);
  ff.n = inner(covariant_derivative(jet.phi_v, d.phi_v_v, jet.phi_v), N);
  return ff;
}

/// The three covariant second derivatives ∇_{Φu}Φu, ∇_{Φu}Φv, ∇_{Φv}Φv.
struct SecondDerivatives {
  FrameVector uu, uv, vv;
};

inline SecondDerivatives covariant_second_derivatives(const SurfaceJet2& jet) {
  const FrameDerivatives d = frame_derivatives(jet);
  return {covariant_derivative(jet.phi_u, d.phi_u_u, jet.phi_u),
          covariant_derivative(jet.phi_v, d.phi_v_u, jet.phi_u),
          covariant_derivative(jet.phi_v, d.phi_v_v, jet.phi_v)};
}

/// H = ½ (lG − 2mF + En) / (EG − F²).
inline double mean_curvature(const FundamentalForms& ff) {
  return 0.5 * (ff.l * ff.G - 2.0 * ff.m * ff.F + ff.E * ff.n) / ff.area_density_sq();
}

inline double mean_curvature(const SurfaceJet2& jet) { return mean_curvature(fundamental_forms(jet)); }

}  // namespace heisflow
