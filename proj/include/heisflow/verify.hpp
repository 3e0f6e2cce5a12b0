#pragma once

// Named numerical checks grouped into suites. Every check is an upper bound:
// status is pass exactly when max_error <= tolerance.

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "heisflow/geodesics.hpp"
#include "heisflow/graph_flow.hpp"
#include "heisflow/heisenberg.hpp"
#include "heisflow/isometries.hpp"
#include "heisflow/profiles.hpp"
#include "heisflow/solitons.hpp"
#include "heisflow/surface.hpp"

namespace heisflow {

struct CheckResult {
  std::string name;
  bool pass = false;
  double max_error = 0.0;
  double tolerance = 0.0;
  std::size_t samples = 0;
};

struct VerifyReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;

  void add(std::string name, double max_error, double tolerance, std::size_t samples) {
    // NaN never passes.
    checks.push_back({std::move(name), max_error <= tolerance, max_error, tolerance, samples});
  }
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

inline nlohmann::json to_json(const VerifyReport& r) {
  nlohmann::json checks = nlohmann::json::object();
  for (const auto& c : r.checks)
    checks[c.name] = {{"status", c.pass ? "pass" : "fail"},
                      {"maxError", std::isfinite(c.max_error) ? nlohmann::json(c.max_error)
                                                              : nlohmann::json(nullptr)},
                      {"tolerance", c.tolerance},
                      {"samples", c.samples}};
  return {{"suite", r.suite}, {"seed", r.seed}, {"allPass", r.all_pass()}, {"checks", checks}};
}

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Point random_point(Rng& rng, double half_width = 2.0) {
  return {uniform(rng, -half_width, half_width), uniform(rng, -half_width, half_width),
          uniform(rng, -half_width, half_width)};
}

/// Christoffels by the Koszul formula on central differences of metric_at.
inline ChristoffelTensor christoffel_koszul_fd(const Point& p, double h = 1e-5) {
  std::array<Mat3, 3> dg;  // dg[a] = ∂_a g
  for (std::size_t a = 0; a < 3; ++a) {
    const CoordVector e = CoordVector::unit(a) * h;
    const Mat3 gp = metric_at(p + e), gm = metric_at(p - e);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) dg[a][i][j] = (gp[i][j] - gm[i][j]) / (2.0 * h);
  }
  const Mat3 ginv = inverse(metric_at(p));
  ChristoffelTensor G{};
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        double s = 0.0;
        for (std::size_t l = 0; l < 3; ++l) s += ginv[k][l] * (dg[i][l][j] + dg[j][l][i] - dg[l][i][j]);
        G[k][i][j] = 0.5 * s;
      }
  return G;
}

/// ∇_{E_i}E_j in frame coefficients, from coordinate Christoffels and
/// central differences of the frame fields.
inline ConnectionTable connection_from_christoffel(const Point& p, double h = 1e-5) {
  const ChristoffelTensor G = christoffel_at(p);
  ConnectionTable t{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      const CoordVector Ei = frame_field(p, i);
      const CoordVector dEj = (frame_field(p + Ei * h, j) - frame_field(p - Ei * h, j)) / (2.0 * h);
      t[i][j] = coord_to_frame(p, dEj + christoffel_contract(G, Ei, frame_field(p, j)));
    }
  return t;
}

/// Soliton spec of the family whose profiles are generic: they do not solve
/// the family's equation.
inline SolitonSpec random_spec(Family fam, Rng& rng) {
  SolitonSpec s;
  s.family = fam;
  s.A = uniform(rng, 0.3, 1.5) * (uniform(rng, 0.0, 1.0) < 0.5 ? -1.0 : 1.0);
  if (horizontal_rulings(fam)) {
    const double phi = uniform(rng, 0.0, 2.0 * std::numbers::pi);
    s.B = std::sin(phi);
    s.C = std::cos(phi);
  } else {
    s.B = uniform(rng, -1.0, 1.0);
    s.C = uniform(rng, -1.0, 1.0);
    s.D = uniform(rng, 0.5, 2.0);
  }
  auto poly_trig = [&rng] {
    const double a0 = uniform(rng, -1, 1), a1 = uniform(rng, 0.5, 1.5), a2 = uniform(rng, -0.5, 0.5),
                 a3 = uniform(rng, -0.5, 0.5), w = uniform(rng, 0.5, 2.0);
    return Profile([=](double u) {
      return ProfileValue{a0 + a1 * u + a2 * u * u + a3 * std::sin(w * u),
                          a1 + 2 * a2 * u + a3 * w * std::cos(w * u), 2 * a2 - a3 * w * w * std::sin(w * u)};
    });
  };
  s.f = poly_trig();
  if (horizontal_rulings(fam)) s.g = poly_trig();
  s.domain = {-1.0, 1.0, -1.0, 1.0};
  return s;
}

namespace detail {

inline double max_diff(const ResidualReport& a, const ResidualReport& b) {
  double worst = 0.0;
  for (std::size_t k = 0; k < a.r.size(); ++k) {
    if (a.degenerate[k] || b.degenerate[k]) continue;
    worst = std::max(worst, std::abs(a.r[k] - b.r[k]));
  }
  return worst;
}

inline double max_abs_component_diff(const Point& a, const Point& b) { return max_abs(a - b); }

}  // namespace detail

// ---------------------------------------------------------------- suites

inline void suite_core(VerifyReport& rep, Rng& rng) {
  constexpr int kPoints = 100;
  double chris = 0.0, table = 0.0, ortho = 0.0, bracket = 0.0;
  const ConnectionTable exact = connection_table();
  for (int n = 0; n < kPoints; ++n) {
    const Point p = random_point(rng);
    const ChristoffelTensor a = christoffel_at(p), b = christoffel_koszul_fd(p);
    for (std::size_t k = 0; k < 3; ++k)
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) chris = std::max(chris, std::abs(a[k][i][j] - b[k][i][j]));
    const ConnectionTable t = connection_from_christoffel(p);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        table = std::max(table, max_abs(t[i][j] - exact[i][j]));
        const double d = inner(p, frame_field(p, i), frame_field(p, j)) - (i == j ? 1.0 : 0.0);
        ortho = std::max(ortho, std::abs(d));
      }
    // [E1, E2] = D_{E1}E2 − D_{E2}E1 by central differences.
    const double h = 1e-5;
    const CoordVector e1 = frame_field(p, 0), e2 = frame_field(p, 1);
    const CoordVector d12 = (frame_field(p + e1 * h, 1) - frame_field(p - e1 * h, 1)) / (2 * h);
    const CoordVector d21 = (frame_field(p + e2 * h, 0) - frame_field(p - e2 * h, 0)) / (2 * h);
    bracket = std::max(bracket, max_abs(coord_to_frame(p, d12 - d21) - FrameVector{0, 0, 1}));
  }
  rep.add("christoffel_vs_koszul_fd", chris, 1e-6, kPoints);
  rep.add("frame_table_from_christoffel", table, 1e-6, kPoints);
  rep.add("frame_orthonormal", ortho, 1e-12, kPoints);
  rep.add("bracket_E1_E2_is_E3", bracket, 1e-6, kPoints);

  double torsion = 0.0;
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) {
      // [E1,E2] = E3 and the other brackets vanish.
      FrameVector br;
      if (i == 1 && j == 2) br = {0, 0, 1};
      if (i == 2 && j == 1) br = {0, 0, -1};
      torsion = std::max(torsion, max_abs(covderiv_frame(i, j) - covderiv_frame(j, i) - br));
    }
  rep.add("connection_torsion_free", torsion, 0.0, 9);

  // Plane Φ = (u, c, v).
  double plane = 0.0;
  const double c = uniform(rng, -2.0, 2.0);
  ImmersionSpec im;
  im.domain = {-1, 1, -1, 1};
  im.analytic = [c](double u, double v, double) {
    CoordJet j;
    j.p = {u, c, v};
    j.du = {1, 0, 0};
    j.dv = {0, 0, 1};
    return j;
  };
  for (double u : linspace(-1, 1, 50))
    for (double v : linspace(-1, 1, 50)) plane = std::max(plane, std::abs(mean_curvature(jet_at(im, u, v, 0))));
  rep.add("vertical_plane_minimal", plane, 1e-12, 2500);
}

inline void suite_isometry(VerifyReport& rep, Rng& rng) {
  constexpr int kPoints = 100;
  std::vector<Point> pts;
  for (int n = 0; n < kPoints; ++n) pts.push_back(random_point(rng));
  for (int k = 1; k <= 4; ++k) {
    const FlowId id = flow_id_from_int(k);
    double pull = 0.0, kill = 0.0, gen = 0.0;
    for (const Point& p : pts) {
      for (double t : {-1.0, 0.3, 2.0}) pull = std::max(pull, isometry_residual(id, t, p));
      kill = std::max(kill, killing_residual(KillingField::basis(k), p));
      gen = std::max(gen, flow_generator_check(id, flow_generator(id), p));
    }
    const std::string s = std::to_string(k);
    rep.add("pullback_metric_psi" + s, pull, 1e-8, 3 * kPoints);
    rep.add("killing_X" + s, kill, 1e-6, kPoints);
    rep.add("generator_matches_psi" + s, gen, 1e-8, kPoints);
  }
}

inline GeodesicParams random_helix(Rng& rng) {
  GeodesicParams g;
  g.A = uniform(rng, -1.5, 1.5);
  g.B = uniform(rng, 0.0, 2.0 * std::numbers::pi);
  g.C = uniform(rng, 0.5, 1.5) * (uniform(rng, 0.0, 1.0) < 0.5 ? -1.0 : 1.0);
  return g;
}

/// Max coordinate deviation between RK4 from the curve's initial data and the
/// curve itself, over metric arclength `arclength` with `steps` steps.
inline double integrator_gap(const Curve& curve, const CoordVector& v0, double arclength, int steps) {
  const Point o{0, 0, 0};
  const double length = arclength / metric_norm(o, v0);
  double worst = 0.0;
  for (const auto& s : geodesic_integrate(o, v0, length, steps))
    worst = std::max(worst, detail::max_abs_component_diff(s.p, curve(s.u)));
  return worst;
}

inline void suite_geodesic(VerifyReport& rep, Rng& rng) {
  constexpr int kTriples = 50;
  const auto grid = linspace(0.0, 5.0, 51);
  double lit_res = 0.0, lit_rk = 0.0, ad_res = 0.0, ad_rk = 0.0;
  for (int n = 0; n < kTriples; ++n) {
    const GeodesicParams g = random_helix(rng);
    const Curve literal = [g](double u) { return geodesic_closed_form(g, u); };
    const Curve adapted = [g](double u) { return helix_geodesic(g, u); };
    lit_res = std::max(lit_res, geodesic_residual(literal, grid));
    ad_res = std::max(ad_res, geodesic_residual(adapted, grid));
    lit_rk = std::max(lit_rk, integrator_gap(literal, geodesic_closed_form_velocity0(g), 5.0, 5000));
    ad_rk = std::max(ad_rk, integrator_gap(adapted, helix_geodesic_velocity0(g), 5.0, 5000));
  }
  rep.add("marenich_closed_form_residual", lit_res, 1e-6, kTriples);
  rep.add("marenich_closed_form_vs_rk4", lit_rk, 1e-6, kTriples);
  rep.add("helix_geodesic_residual", ad_res, 1e-6, kTriples);
  rep.add("helix_geodesic_vs_rk4", ad_rk, 1e-6, kTriples);

  // Limits: γ'' = 0 along both lines, so the residual is |Γ(γ', γ')| exactly.
  double horiz = 0.0, horiz_rk = 0.0, vert = 0.0;
  for (int n = 0; n < 10; ++n) {
    const double A = uniform(rng, -2, 2), B = uniform(rng, -2, 2);
    const CoordVector v{A, B, 0.0};
    for (double u : grid)
      horiz = std::max(horiz, max_abs(christoffel_contract(christoffel_at(geodesic_horizontal(A, B, u)), v, v)));
    horiz_rk = std::max(horiz_rk, integrator_gap([A, B](double u) { return geodesic_horizontal(A, B, u); }, v, 5.0, 5000));
  }
  const CoordVector up{0.0, 0.0, 1.0};
  for (double u : grid) {
    const Point p = geodesic_closed_form({0.0, 0.0, 1.0}, u);
    vert = std::max(vert, max_abs(p - Point{0, 0, u}));
    vert = std::max(vert, max_abs(christoffel_contract(christoffel_at(p), up, up)));
  }
  rep.add("horizontal_line_limit", horiz, 1e-12, 10 * grid.size());
  rep.add("horizontal_line_vs_rk4", horiz_rk, 1e-9, 10);
  rep.add("vertical_line_limit", vert, 1e-12, grid.size());
}

/// Max |r| over the grid at each of the given times.
inline double max_residual(const SolitonSpec& s, const std::vector<double>& us,
                           const std::vector<double>& vs, std::initializer_list<double> ts) {
  double worst = 0.0;
  for (double t : ts) {
    const ResidualReport r = soliton_residual(s, us, vs, t);
    worst = std::max(worst, r.degenerate_count ? std::numeric_limits<double>::infinity() : r.max_abs);
  }
  return worst;
}

inline double time_invariance(Family fam, Rng& rng, int specs, std::initializer_list<double> ts) {
  const auto us = linspace(-0.9, 0.9, 7), vs = linspace(-0.9, 0.9, 7);
  double worst = 0.0;
  for (int n = 0; n < specs; ++n) {
    const SolitonSpec s = random_spec(fam, rng);
    const ResidualReport r0 = soliton_residual(s, us, vs, 0.0);
    for (double t : ts) worst = std::max(worst, detail::max_diff(r0, soliton_residual(s, us, vs, t)));
  }
  return worst;
}

/// Grim Reaper spec: T1Y with A = ½, B = −1, C = 0, f = −log cos u.
inline SolitonSpec grim_reaper_spec(double half_width = 1.3) {
  SolitonSpec s;
  s.family = Family::T1Y;
  s.A = 0.5;
  s.B = -1.0;
  s.C = 0.0;
  s.f = t1y_provider(s.A, s.B, s.C);
  s.domain = {-half_width, half_width, -1.0, 1.0};
  return s;
}

inline SolitonSpec t1x_reference_spec(double A = 1.0, double D = 2.0, double B = 0.0) {
  SolitonSpec s;
  s.family = Family::T1X;
  s.A = A;
  s.D = D;
  s.B = B;
  s.f = t1x_provider(A, D, B);
  s.domain = {0.2, 1.0, -1.0, 1.0};
  return s;
}

struct T1RCase {
  double A = 0.4, B = 0.1, f0 = 0.3, u0 = 0.0, u1 = 1.0;
  int steps = 2000;
};

inline ProfileSolution t1r_case_profile(const T1RCase& c) {
  return t1r_profile(c.A, c.B, c.f0, c.u0, c.u1, c.steps);
}

/// max over interior nodes of |A(1+f'²)(2u + 2ff') − f''|, f' and f'' by
/// central differences of the sampled f.
inline double t1r_eq2_fd_residual(const ProfileSolution& sol, double A) {
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < sol.size(); ++i) {
    const double h = sol.u[i + 1] - sol.u[i];
    const double f = sol.value[i];
    const double d1 = (sol.value[i + 1] - sol.value[i - 1]) / (2 * h);
    const double d2 = (sol.value[i + 1] - 2 * f + sol.value[i - 1]) / (h * h);
    worst = std::max(worst, std::abs(A * (1 + d1 * d1) * (2 * sol.u[i] + 2 * f * d1) - d2));
  }
  return worst;
}

inline void suite_thm1(VerifyReport& rep, Rng& rng) {
  const auto vs = linspace(-1, 1, 11);
  {
    const SolitonSpec s = t1x_reference_spec();
    const auto us = linspace(0.2, 1.0, 41);
    rep.add("t1x_soliton_residual", max_residual(s, us, vs, {0.0, 0.5, 1.0}), 1e-8, 3 * us.size() * vs.size());
    double ode = 0.0;
    for (double u : us) ode = std::max(ode, std::abs(paper_ode_residual(s, u, 0.0)));
    rep.add("t1x_profile_ode", ode, 1e-8, us.size());
  }
  {
    const SolitonSpec s = grim_reaper_spec();
    const auto us = linspace(-1.3, 1.3, 53);
    rep.add("t1y_grim_reaper_residual", max_residual(s, us, vs, {0.0, 0.5, 1.0}), 1e-8,
            3 * us.size() * vs.size());
    double ode = 0.0;
    for (double u : us) ode = std::max(ode, std::abs(paper_ode_residual(s, u, 0.0)));
    rep.add("t1y_profile_ode", ode, 1e-8, us.size());
  }
  {
    const T1RCase c;
    ProfileSolution sol = t1r_case_profile(c);
    rep.add("t1r_profile_ode_fd", sol.truncated ? INFINITY : t1r_eq2_fd_residual(sol, c.A), 1e-6, sol.size());
    SolitonSpec s;
    s.family = Family::T1R;
    s.A = c.A;
    s.B = c.B;
    s.domain = {c.u0, c.u1, -1.0, 1.0};
    const std::vector<double> us = sol.u;
    s.f = sampled_profile(std::move(sol));
    rep.add("t1r_soliton_residual", max_residual(s, us, vs, {0.0, 0.5, 1.0}), 1e-6, 3 * us.size() * vs.size());
  }
  for (Family f : {Family::T1R, Family::T1X, Family::T1Y})
    rep.add(std::string("time_invariance_") + family_name(f), time_invariance(f, rng, 20, {0.5, 2.0}), 1e-8,
            20 * 2 * 49);
}

/// Example soliton with f(u) = u and the Riccati g-profile at v★.
struct T2Case {
  Family family = Family::T2Z;
  double A = 0.5, B = 0.6, C = 0.8, v_star = 0.3, y0 = 0.2, g0 = 0.0;
  double u0 = -0.5, u1 = 0.5;
  int steps = 1000;
};

inline SolitonSpec t2_case_spec(const T2Case& c, ProfileSolution* out = nullptr) {
  ProfileSolution sol =
      t2_matching_profile(c.family, c.A, c.B, c.C, c.v_star, c.y0, c.g0, c.u0, c.u1, c.steps);
  if (sol.truncated) throw DomainError("T2 example profile: " + sol.stop_reason, sol.u.back());
  if (out) *out = sol;
  SolitonSpec s;
  s.family = c.family;
  s.A = c.A;
  s.B = c.B;
  s.C = c.C;
  s.f = affine_provider(1.0, 0.0);
  s.g = sampled_profile(std::move(sol));
  s.domain = {c.u0, c.u1, -1.0, 1.0};
  return s;
}

inline std::vector<T2Case> t2_reference_cases() {
  T2Case z;  // T2Z with f = u
  T2Case x;
  x.family = Family::T2X;
  x.B = 0.0;
  x.C = 1.0;
  T2Case r;
  r.family = Family::T2R;
  return {z, x, r};
}

inline void suite_thm2(VerifyReport& rep, Rng& rng) {
  for (const T2Case& c : t2_reference_cases()) {
    ProfileSolution sol;
    const SolitonSpec s = t2_case_spec(c, &sol);
    double eq = 0.0;
    for (double u : sol.u) eq = std::max(eq, std::abs(paper_ode_residual(s, u, c.v_star)));
    const std::string name = family_name(c.family);
    rep.add("profile_equation_at_vstar_" + name, eq, 1e-6, sol.size());
    rep.add("soliton_residual_at_vstar_" + name, max_residual(s, sol.u, {c.v_star}, {0.0, 1.0}), 1e-4,
            2 * sol.size());
  }
  // Generic profiles: the conversion factor r / mismatch stays positive and
  // does not depend on t.
  for (Family f : {Family::T2R, Family::T2X, Family::T2Z}) {
    std::size_t bad_sign = 0, n = 0;
    double drift = 0.0;
    for (int k = 0; k < 100; ++k) {
      const SolitonSpec s = random_spec(f, rng);
      const double u = uniform(rng, -0.9, 0.9), v = uniform(rng, -0.9, 0.9);
      const Equivalence e0 = residual_equation_equivalence(s, u, v, 0.0);
      const Equivalence e1 = residual_equation_equivalence(s, u, v, 1.0);
      if (!std::isfinite(e0.ratio) || !std::isfinite(e1.ratio)) continue;
      ++n;
      if (!(e0.ratio > 0.0)) ++bad_sign;
      drift = std::max(drift, std::abs(e0.ratio - e1.ratio));
    }
    const std::string name = family_name(f);
    rep.add("equivalence_ratio_nonpositive_count_" + name, static_cast<double>(bad_sign), 0.0, n);
    rep.add("equivalence_ratio_t_drift_" + name, drift, 1e-8, n);
  }
  for (Family f : {Family::T2R, Family::T2X, Family::T2Z})
    rep.add(std::string("time_invariance_") + family_name(f), time_invariance(f, rng, 20, {0.5, 2.0}), 1e-8,
            20 * 2 * 49);
}

/// Grim Reaper evolved from t = 0 to T on [−w, w] with oracle boundaries;
/// returns the interior L∞ error against −log cos u + t/2.
inline double grim_reaper_flow_error(double dx, double T = 0.2, double half_width = 1.3) {
  const SolitonSpec s = grim_reaper_spec(half_width);
  const int n = static_cast<int>(std::lround(2 * half_width / dx)) + 1;
  FlowProfile p0 = sample_profile([&](double u) { return s.f(u).value; }, -half_width, half_width, n,
                                  BoundaryMode::DirichletOracle);
  EvolveOptions opt;
  opt.T = T;
  opt.oracle = graph_oracle(s);
  return compare_to_soliton(evolve(p0, opt).back(), s);
}

inline void suite_flow(VerifyReport& rep, Rng& rng) {
  const double coarse = grim_reaper_flow_error(2e-3);
  const double fine = grim_reaper_flow_error(1e-3);
  rep.add("grim_reaper_pde_error_dx2e-3", coarse, 5e-3, 1);
  // Order 2 in space: halving dx should divide the error by about 4.
  rep.add("grim_reaper_halving_ratio_minus_4", std::abs(coarse / fine - 4.0), 1.0, 2);

  const double c = uniform(rng, -1, 1), k = uniform(rng, -1, 1);
  EvolveOptions opt;
  opt.T = 0.05;
  double still = 0.0;
  for (const auto& start : {sample_profile([c](double) { return c; }, -1, 1, 101),
                            sample_profile([c, k](double u) { return c + k * u; }, -1, 1, 101)}) {
    const FlowProfile end = evolve(start, opt).back();
    for (std::size_t i = 0; i < end.size(); ++i) still = std::max(still, std::abs(end.f[i] - start.f[i]));
  }
  rep.add("constant_and_linear_stationary", still, 1e-12, 2);
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"core", "isometry", "geodesic", "thm1", "thm2", "flow", "all"};
  return names;
}

/// Runs a named suite; throws Error on an unknown name.
inline VerifyReport run_suite(const std::string& suite, std::uint64_t seed) {
  using SuiteFn = void (*)(VerifyReport&, Rng&);
  const std::vector<std::pair<std::string, SuiteFn>> table{
      {"core", suite_core}, {"isometry", suite_isometry}, {"geodesic", suite_geodesic},
      {"thm1", suite_thm1}, {"thm2", suite_thm2},         {"flow", suite_flow}};
  VerifyReport rep;
  rep.suite = suite;
  rep.seed = seed;
  bool found = false;
  for (const auto& [name, fn] : table)
    if (suite == "all" || suite == name) {
      Rng rng(seed);
      fn(rep, rng);
      found = true;
    }
  if (!found) throw Error("unknown suite '" + suite + "'");
  return rep;
}

}  // namespace heisflow
