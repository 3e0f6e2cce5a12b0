#pragma once

// Soliton families Φᵗ = Ψ^{ε(t)} ∘ Φ₀ with ε(t) = A·t, where Φ₀ is a ruled
// surface and Ψ one of the four isometry flows:
//
//   T1R, T1X, T1Y   Φ₀ = (u, f(u), v)                   via Ψ1, Ψ2, Ψ3
//   T2R, T2X, T2Z   Φ₀ = (Cv − Bf(u), Cf(u) + Bv, g(u))  via Ψ1, Ψ2, Ψ4
//
// The residual r = ⟨∂ₜΦ, N⟩ − H vanishes exactly on solitons.

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "heisflow/isometries.hpp"
#include "heisflow/parallel.hpp"
#include "heisflow/profiles.hpp"
#include "heisflow/surface.hpp"
#include "heisflow/types.hpp"

namespace heisflow {

enum class Family { T1R, T1X, T1Y, T2R, T2X, T2Z };

inline constexpr Family kAllFamilies[] = {Family::T1R, Family::T1X, Family::T1Y,
                                          Family::T2R, Family::T2X, Family::T2Z};

inline const char* family_name(Family f) {
  switch (f) {
    case Family::T1R: return "T1R";
    case Family::T1X: return "T1X";
    case Family::T1Y: return "T1Y";
    case Family::T2R: return "T2R";
    case Family::T2X: return "T2X";
    case Family::T2Z: return "T2Z";
  }
  return "?";
}

inline Family family_from_string(std::string_view s) {
  for (Family f : kAllFamilies)
    if (s == family_name(f)) return f;
  throw Error("unknown soliton family '" + std::string(s) + "'");
}

constexpr bool horizontal_rulings(Family f) {
  return f == Family::T2R || f == Family::T2X || f == Family::T2Z;
}

constexpr FlowId family_flow(Family f) {
  switch (f) {
    case Family::T1R:
    case Family::T2R: return FlowId::Rotation;
    case Family::T1X:
    case Family::T2X: return FlowId::TranslationX;
    case Family::T1Y: return FlowId::TranslationY;
    case Family::T2Z: return FlowId::Vertical;
  }
  return FlowId::Vertical;
}

/// One soliton candidate. `f` is always used; `g` only by the T2 families.
/// B, C, D enter the T1X/T1Y profiles and the T2 rulings.
struct SolitonSpec {
  Family family = Family::T1X;
  double A = 1.0, B = 0.0, C = 0.0, D = 1.0;
  Profile f, g;
  ParamRect domain;
};

inline void validate(const SolitonSpec& s) {
  if (s.A == 0.0 || !std::isfinite(s.A)) throw Error("SolitonSpec: A must be nonzero");
  if (s.family == Family::T1X && !(s.D > 0.0)) throw Error("SolitonSpec: T1X needs D > 0");
  if (s.family == Family::T1Y && s.B * s.B + s.C * s.C == 0.0)
    throw Error("SolitonSpec: T1Y needs B² + C² ≠ 0");
  if (horizontal_rulings(s.family) && std::abs(s.B * s.B + s.C * s.C - 1.0) > 1e-12)
    throw Error("SolitonSpec: T2 families need B² + C² = 1");
  if (!s.f) throw Error("SolitonSpec: missing profile f");
  if (horizontal_rulings(s.family) && !s.g) throw Error("SolitonSpec: missing profile g");
}

/// Jet of the initial ruled surface Φ₀ at (u, v); `dt` is left zero.
inline CoordJet initial_jet(const SolitonSpec& s, double u, double v) {
  const ProfileValue f = s.f(u);
  CoordJet j;
  if (!horizontal_rulings(s.family)) {
    j.p = {u, f.value, v};
    j.du = {1.0, f.d1, 0.0};
    j.dv = {0.0, 0.0, 1.0};
    j.duu = {0.0, f.d2, 0.0};
    return j;
  }
  const ProfileValue g = s.g(u);
  j.p = {s.C * v - s.B * f.value, s.C * f.value + s.B * v, g.value};
  j.du = {-s.B * f.d1, s.C * f.d1, g.d1};
  j.dv = {s.C, s.B, 0.0};
  j.duu = {-s.B * f.d2, s.C * f.d2, g.d2};
  return j;
}

/// Time law ε(t) with its derivative.
struct TimeLaw {
  std::function<double(double)> eps, deps;
};

inline TimeLaw linear_time_law(double A) {
  return {[A](double t) { return A * t; }, [A](double) { return A; }};
}

namespace detail {

/// Φᵗ = Ψ^{ε(t)} ∘ Φ₀ for an arbitrary time law. Only ε(t) = A·t gives the
/// soliton families; other laws exist for falsification tests.
inline ImmersionSpec soliton_surface_law(const SolitonSpec& s, const TimeLaw& law,
                                         DerivativeMode mode = DerivativeMode::Analytic) {
  validate(s);
  const FlowId id = family_flow(s.family);
  ImmersionSpec im;
  im.domain = s.domain;
  im.mode = mode;
  im.position = [s, id, law](double u, double v, double t) {
    return flow_apply(id, law.eps(t), initial_jet(s, u, v).p);
  };
  im.analytic = [s, id, law](double u, double v, double t) {
    const CoordJet j0 = initial_jet(s, u, v);
    const double e = law.eps(t);
    const Mat3 J = flow_jacobian(id, e);
    CoordJet j;
    j.p = flow_apply(id, e, j0.p);
    j.du = apply(J, j0.du);
    j.dv = apply(J, j0.dv);
    j.duu = apply(J, j0.duu);
    j.duv = apply(J, j0.duv);
    j.dvv = apply(J, j0.dvv);
    j.dt = flow_velocity(id, e, j0.p) * law.deps(t);
    return j;
  };
  return im;
}

}  // namespace detail

/// The time-dependent immersion of the family, ε(t) = A·t. Every Ψᵗ is affine,
/// so the spatial partials are dΨ applied to those of Φ₀.
inline ImmersionSpec soliton_surface(const SolitonSpec& s,
                                     DerivativeMode mode = DerivativeMode::Analytic) {
  return detail::soliton_surface_law(s, linear_time_law(s.A), mode);
}

inline Point soliton_point(const SolitonSpec& s, double u, double v, double t) {
  return flow_apply(family_flow(s.family), s.A * t, initial_jet(s, u, v).p);
}

struct PointResidual {
  double r = 0.0;
  bool degenerate = false;
};

/// r = ⟨∂ₜΦ, N⟩ − H at one parameter point; NaN and flagged if degenerate.
inline PointResidual residual_at(const ImmersionSpec& im, double u, double v, double t) {
  const SurfaceJet2 jet = jet_at(im, u, v, t);
  if (jet.degenerate) return {std::numeric_limits<double>::quiet_NaN(), true};
  return {inner(jet.phi_t, unit_normal(jet)) - mean_curvature(jet), false};
}

/// Residual on a tensor grid. Values are stored row-major, r[i·nv + j] at
/// (u[i], v[j]); statistics skip degenerate points.
struct ResidualReport {
  std::vector<double> u, v;
  double t = 0.0;
  std::vector<double> r;
  std::vector<char> degenerate;
  double max_abs = 0.0, mean_abs = 0.0;
  std::size_t degenerate_count = 0;
  std::string label;  ///< "trivial" when a trivial-solution screen fired

  double at(std::size_t i, std::size_t j) const { return r[i * v.size() + j]; }
};

namespace detail {

inline void summarize(ResidualReport& rep) {
  double sum = 0.0;
  std::size_t count = 0;
  rep.max_abs = 0.0;
  rep.degenerate_count = 0;
  for (std::size_t k = 0; k < rep.r.size(); ++k) {
    if (rep.degenerate[k]) {
      ++rep.degenerate_count;
      continue;
    }
    rep.max_abs = std::max(rep.max_abs, std::abs(rep.r[k]));
    sum += std::abs(rep.r[k]);
    ++count;
  }
  rep.mean_abs = count ? sum / static_cast<double>(count) : 0.0;
}

}  // namespace detail

inline ResidualReport immersion_residual(const ImmersionSpec& im, std::vector<double> ugrid,
                                         std::vector<double> vgrid, double t) {
  if (ugrid.empty() || vgrid.empty()) throw Error("soliton_residual: empty grid");
  ResidualReport rep;
  rep.u = std::move(ugrid);
  rep.v = std::move(vgrid);
  rep.t = t;
  const std::size_t nu = rep.u.size(), nv = rep.v.size();
  rep.r.assign(nu * nv, 0.0);
  rep.degenerate.assign(nu * nv, 0);
  parallel_for(nu, [&](std::size_t i) {
    for (std::size_t j = 0; j < nv; ++j) {
      const PointResidual pr = residual_at(im, rep.u[i], rep.v[j], t);
      rep.r[i * nv + j] = pr.r;
      rep.degenerate[i * nv + j] = pr.degenerate ? 1 : 0;
    }
  });
  detail::summarize(rep);
  return rep;
}

/// Trivial-solution screens for T2 specs, tested on the given samples:
/// B = C = 0, f or g constant, f = B·g + C, and for T2X
/// (C/2 f² + Bvf + 2Bg)' ≡ 0. Returns "trivial" or "".
inline std::string screen_trivial(const SolitonSpec& s, const std::vector<double>& ugrid,
                                  const std::vector<double>& vgrid, double tol = 1e-12) {
  if (!horizontal_rulings(s.family)) return "";
  if (s.B == 0.0 && s.C == 0.0) return "trivial";
  bool f_const = true, g_const = true, affine = true, t2x_const = true;
  for (double u : ugrid) {
    const ProfileValue f = s.f(u), g = s.g(u);
    f_const = f_const && std::abs(f.d1) <= tol;
    g_const = g_const && std::abs(g.d1) <= tol;
    affine = affine && std::abs(f.value - s.B * g.value - s.C) <= tol;
    for (double v : vgrid)
      t2x_const = t2x_const && std::abs(s.C * f.value * f.d1 + s.B * v * f.d1 + 2.0 * s.B * g.d1) <= tol;
  }
  if (f_const || g_const || affine) return "trivial";
  if (s.family == Family::T2X && t2x_const) return "trivial";
  return "";
}

inline ResidualReport soliton_residual(const SolitonSpec& s, std::vector<double> ugrid,
                                       std::vector<double> vgrid, double t) {
  ResidualReport rep = immersion_residual(soliton_surface(s), std::move(ugrid), std::move(vgrid), t);
  rep.label = screen_trivial(s, rep.u, rep.v);
  return rep;
}

/// LHS − RHS of the family's profile equation, as written out:
///   T1X  f'' + 2A f'(1 + f'²)
///   T1Y  f'' − 2A(1 + f'²)
///   T1R  A(1 + f'²)(u² + f²)' − f''
///   T2R  2vAg'·Q − (4 + f²)(f''g' − f'g'')
///   T2X  −A·Q·(C/2 f² + Bvf + 2Bg)' − (4 + f²)(f''g' − f'g'')
///   T2Z  −2Af'·Q − (4 + f²)(f''g' − f'g'')
/// with Q = f'²(4 + f²) + (2g' − vf')².
inline double paper_ode_residual(const SolitonSpec& s, double u, double v) {
  const ProfileValue f = s.f(u);
  const double A = s.A;
  switch (s.family) {
    case Family::T1X: return f.d2 + 2.0 * A * f.d1 * (1.0 + f.d1 * f.d1);
    case Family::T1Y: return f.d2 - 2.0 * A * (1.0 + f.d1 * f.d1);
    case Family::T1R:
      return A * (1.0 + f.d1 * f.d1) * (2.0 * u + 2.0 * f.value * f.d1) - f.d2;
    default: break;
  }
  const ProfileValue g = s.g(u);
  const double w = 2.0 * g.d1 - v * f.d1;
  const double Q = f.d1 * f.d1 * (4.0 + f.value * f.value) + w * w;
  const double rhs = (4.0 + f.value * f.value) * (f.d2 * g.d1 - f.d1 * g.d2);
  switch (s.family) {
    case Family::T2R: return 2.0 * v * A * g.d1 * Q - rhs;
    case Family::T2X:
      return -A * Q * (s.C * f.value * f.d1 + s.B * v * f.d1 + 2.0 * s.B * g.d1) - rhs;
    case Family::T2Z: return -2.0 * A * f.d1 * Q - rhs;
    default: break;
  }
  throw Error("paper_ode_residual: bad family");
}

struct Equivalence {
  double r = 0.0;
  double mismatch = 0.0;
  double ratio = std::numeric_limits<double>::quiet_NaN();  ///< r / mismatch, NaN if mismatch ≈ 0
};

/// Geometric residual next to the profile-equation mismatch. The ratio is
/// 1/(2(1+f'²)^{3/2}) for T1X, T1Y, its negative for T1R, and 1/(8(EG−F²)^{3/2})
/// for the T2 families.
inline Equivalence residual_equation_equivalence(const SolitonSpec& s, double u, double v, double t) {
  const PointResidual pr = residual_at(soliton_surface(s), u, v, t);
  if (pr.degenerate) throw DegenerateError("residual_equation_equivalence: degenerate point");
  Equivalence e;
  e.r = pr.r;
  e.mismatch = paper_ode_residual(s, u, v);
  if (std::abs(e.mismatch) > 1e-14) e.ratio = e.r / e.mismatch;
  return e;
}

/// Right-hand side y' = F(u, y) of the Riccati reduction of a T2 equation
/// with f(u) = u and y = 2g' − v★:
///   T2Z  4A(1 + y²/(4+u²))
///   T2X  2A(Cu + 2Bv★ + By)(1 + y²/(4+u²))
///   T2R  −2Av★(y + v★)(1 + y²/(4+u²))
inline ScalarRhs t2_reduced_rhs(Family fam, double A, double B, double C, double v_star) {
  switch (fam) {
    case Family::T2Z: return riccati_rhs(RiccatiKind::ConstantForcing, A);
    case Family::T2X:
      if (C == 1.0 && B == 0.0) return riccati_rhs(RiccatiKind::LinearForcing, A);
      return [=](double u, double y) {
        return 2.0 * A * (C * u + 2.0 * B * v_star + B * y) * (1.0 + y * y / (4.0 + u * u));
      };
    case Family::T2R:
      return [=](double u, double y) {
        return -2.0 * A * v_star * (y + v_star) * (1.0 + y * y / (4.0 + u * u));
      };
    default: break;
  }
  throw Error("t2_reduced_rhs: not a T2 family");
}

/// g-profile of a T2 soliton with f(u) = u, from y(u0) = y0 and g(u0) = g0.
inline ProfileSolution t2_matching_profile(Family fam, double A, double B, double C, double v_star,
                                           double y0, double g0, double u0, double u1, int steps) {
  RiccatiOptions opt;
  opt.v_star = v_star;
  opt.g0 = g0;
  RiccatiKind kind = RiccatiKind::General;
  if (fam == Family::T2Z) kind = RiccatiKind::ConstantForcing;
  else if (fam == Family::T2X && C == 1.0 && B == 0.0) kind = RiccatiKind::LinearForcing;
  else opt.general = t2_reduced_rhs(fam, A, B, C, v_star);
  return riccati_solve(kind, A, y0, u0, u1, steps, opt);
}

}  // namespace heisflow
