#pragma once

// Profile functions of the soliton families: closed forms, fixed-step RK4
// solvers, and sampled profiles with Hermite interpolation.

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "heisflow/ode.hpp"
#include "heisflow/types.hpp"

namespace heisflow {

/// Value with first and second derivative at one abscissa.
struct ProfileValue {
  double value = 0.0, d1 = 0.0, d2 = 0.0;
};

using Profile = std::function<ProfileValue(double)>;

enum class ProfileMethod { ClosedForm, RK4 };

/// Sampled profile on a uniform grid. For Riccati solutions `value/d1/d2`
/// hold g, g', g'' and `aux/aux_d1` hold y, y'.
struct ProfileSolution {
  std::vector<double> u, value, d1, d2;
  std::vector<double> aux, aux_d1;
  ProfileMethod method = ProfileMethod::RK4;
  bool truncated = false;
  std::string stop_reason;

  std::size_t size() const { return u.size(); }
};

inline constexpr double kDefaultStep = 1e-3;

inline int default_steps(double u0, double u1) {
  return std::max(2, static_cast<int>(std::lround(std::abs(u1 - u0) / kDefaultStep)));
}

/// Translating vertical-ruling profile
///   f(u) = ±1/(2A) · arctan √(D e^{4Au} − 1) + B,   f' = ±(D e^{4Au} − 1)^{−1/2}.
/// Requires D e^{4Au} > 1.
inline ProfileValue t1x_profile(double A, double D, double B, double u, int sign = +1) {
  const double q = D * std::exp(4.0 * A * u) - 1.0;
  if (!(q > 0.0)) throw DomainError("t1x_profile: D·e^{4Au} <= 1", u);
  const double s = std::sqrt(q);
  const double sg = sign >= 0 ? 1.0 : -1.0;
  return {sg / (2.0 * A) * std::atan(s) + B, sg / s, -sg * 2.0 * A * (q + 1.0) / (q * s)};
}

/// Grim-Reaper-type profile f(u) = −1/(2A) · log[C sin(2Au) − B cos(2Au)].
inline ProfileValue t1y_profile(double A, double B, double C, double u) {
  const double w = C * std::sin(2.0 * A * u) - B * std::cos(2.0 * A * u);
  if (!(w > 0.0)) throw DomainError("t1y_profile: log of a non-positive argument", u);
  const double wp = 2.0 * A * (C * std::cos(2.0 * A * u) + B * std::sin(2.0 * A * u));
  return {-std::log(w) / (2.0 * A), -wp / (2.0 * A * w),
          (4.0 * A * A * w * w + wp * wp) / (2.0 * A * w * w)};
}

/// Abscissa where C sin(2Au) − B cos(2Au) = R cos(2Au − atan2(C, −B)) peaks,
/// i.e. a critical point of the T1Y profile.
inline double t1y_peak(double A, double B, double C) {
  return std::atan2(C, -B) / (2.0 * A);
}

inline constexpr double kPoleMargin = 1e-3;

/// RK4 solution of f' = tan[A(u² + f²) + B] from f(u0) = f0. Stops with a
/// truncated result once |cos(A(u² + f²) + B)| < pole_margin or a step crosses a pole.
inline ProfileSolution t1r_profile(double A, double B, double f0, double u0, double u1, int steps,
                                   double pole_margin = kPoleMargin) {
  if (steps < 2) throw Error("t1r_profile: steps must be >= 2");
  auto phase = [A, B](double u, double f) { return A * (u * u + f * f) + B; };
  if (std::abs(std::cos(phase(u0, f0))) < pole_margin)
    throw DomainError("t1r_profile: start point sits on a tan pole", u0);

  auto rhs = [&](double u, double f) { return std::tan(phase(u, f)); };
  ProfileSolution sol;
  sol.method = ProfileMethod::RK4;
  auto record = [&](double u, double f) {
    const double fp = rhs(u, f);
    sol.u.push_back(u);
    sol.value.push_back(f);
    sol.d1.push_back(fp);
    sol.d2.push_back((1.0 + fp * fp) * A * (2.0 * u + 2.0 * f * fp));
  };

  const double h = (u1 - u0) / steps;
  double f = f0;
  record(u0, f);
  for (int i = 0; i < steps; ++i) {
    const double u = u0 + i * h;
    const double next = rk4_step(rhs, u, f, h);
    const double un = i + 1 == steps ? u1 : u0 + (i + 1) * h;
    // A sign change of cos means a step jumped over a pole.
    const double c = std::cos(phase(un, next));
    if (!std::isfinite(next) || std::abs(c) < pole_margin || c * std::cos(phase(u, f)) < 0.0) {
      sol.truncated = true;
      sol.stop_reason = "tan pole margin reached at u = " + std::to_string(un);
      break;
    }
    f = next;
    record(un, f);
  }
  return sol;
}

/// Right-hand side y' = F(u, y).
using ScalarRhs = std::function<double(double, double)>;

enum class RiccatiKind {
  LinearForcing,    ///< y' = 2Au [y²/(4+u²) + 1]
  ConstantForcing,  ///< y' = 4A [y²/(4+u²) + 1]
  General,          ///< caller-supplied right-hand side
};

inline ScalarRhs riccati_rhs(RiccatiKind kind, double A, const ScalarRhs& general = {}) {
  switch (kind) {
    case RiccatiKind::LinearForcing:
      return [A](double u, double y) { return 2.0 * A * u * (y * y / (4.0 + u * u) + 1.0); };
    case RiccatiKind::ConstantForcing:
      return [A](double u, double y) { return 4.0 * A * (y * y / (4.0 + u * u) + 1.0); };
    case RiccatiKind::General:
      if (!general) throw Error("riccati_rhs: general kind needs a right-hand side");
      return general;
  }
  throw Error("riccati_rhs: bad kind");
}

struct RiccatiOptions {
  double v_star = 0.0;  ///< surface parameter v used in y = 2g' − v
  double g0 = 0.0;      ///< g(u0)
  double y_cap = 1e8;   ///< blow-up guard on |y|
  ScalarRhs general;    ///< right-hand side for RiccatiKind::General
};

/// RK4 for y on [u0, u1], then g' = (y + v★)/2, g'' = y'/2 and g by the
/// trapezoid rule from g(u0) = g0. Blow-up truncates the solution.
inline ProfileSolution riccati_solve(RiccatiKind kind, double A, double y0, double u0, double u1,
                                     int steps, const RiccatiOptions& opt = {}) {
  if (steps < 2) throw Error("riccati_solve: steps must be >= 2");
  const ScalarRhs rhs = riccati_rhs(kind, A, opt.general);
  ProfileSolution sol;
  sol.method = ProfileMethod::RK4;
  auto record = [&](double u, double y) {
    const double dy = rhs(u, y);
    sol.u.push_back(u);
    sol.aux.push_back(y);
    sol.aux_d1.push_back(dy);
    sol.d1.push_back(0.5 * (y + opt.v_star));
    sol.d2.push_back(0.5 * dy);
  };

  const double h = (u1 - u0) / steps;
  double y = y0;
  record(u0, y);
  for (int i = 0; i < steps; ++i) {
    const double next = rk4_step(rhs, u0 + i * h, y, h);
    const double un = i + 1 == steps ? u1 : u0 + (i + 1) * h;
    if (!std::isfinite(next) || std::abs(next) >= opt.y_cap) {
      sol.truncated = true;
      sol.stop_reason = "blow-up guard |y| >= cap at u = " + std::to_string(un);
      break;
    }
    y = next;
    record(un, y);
  }

  sol.value.resize(sol.u.size());
  sol.value[0] = opt.g0;
  for (std::size_t i = 1; i < sol.u.size(); ++i)
    sol.value[i] = sol.value[i - 1] + 0.5 * (sol.u[i] - sol.u[i - 1]) * (sol.d1[i] + sol.d1[i - 1]);
  return sol;
}

/// Profile backed by samples: cubic Hermite for the value (slopes d1) and for
/// d1 (slopes d2), linear interpolation for d2. Exact at the nodes.
inline Profile sampled_profile(ProfileSolution sol) {
  if (sol.size() < 2) throw Error("sampled_profile: need at least two samples");
  const bool increasing = sol.u.back() > sol.u.front();
  return [s = std::move(sol), increasing](double u) -> ProfileValue {
    const double lo = increasing ? s.u.front() : s.u.back();
    const double hi = increasing ? s.u.back() : s.u.front();
    const double slack = 1e-12 * std::max(1.0, std::abs(hi - lo));
    if (u < lo - slack || u > hi + slack)
      throw DomainError("sampled profile evaluated outside its grid", u);
    // Uniform grid: locate the cell directly.
    const std::size_t n = s.u.size();
    const double h = (s.u.back() - s.u.front()) / static_cast<double>(n - 1);
    double pos = (u - s.u.front()) / h;
    std::size_t i = static_cast<std::size_t>(std::clamp(std::floor(pos), 0.0, static_cast<double>(n - 2)));
    const double x = std::clamp(pos - static_cast<double>(i), 0.0, 1.0);
    const double x2 = x * x, x3 = x2 * x;
    const double h00 = 2 * x3 - 3 * x2 + 1, h10 = x3 - 2 * x2 + x;
    const double h01 = -2 * x3 + 3 * x2, h11 = x3 - x2;
    auto hermite = [&](const std::vector<double>& y, const std::vector<double>& dy) {
      return h00 * y[i] + h10 * h * dy[i] + h01 * y[i + 1] + h11 * h * dy[i + 1];
    };
    return {hermite(s.value, s.d1), hermite(s.d1, s.d2), (1.0 - x) * s.d2[i] + x * s.d2[i + 1]};
  };
}

/// Closed-form profile as a provider.
inline Profile t1x_provider(double A, double D, double B, int sign = +1) {
  return [=](double u) { return t1x_profile(A, D, B, u, sign); };
}

inline Profile t1y_provider(double A, double B, double C) {
  return [=](double u) { return t1y_profile(A, B, C, u); };
}

/// f(u) = a u + b.
inline Profile affine_provider(double a, double b) {
  return [=](double u) { return ProfileValue{a * u + b, a, 0.0}; };
}

}  // namespace heisflow
