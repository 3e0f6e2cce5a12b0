#pragma once

// Mean curvature flow of vertical-ruled graphs Φ = (u, f(u, t), v).
//
// Frame coefficients: Φu×Φv = (f', −1, 0), so N = (f', −1, 0)/√(1+f'²), and
// ∂ₜΦ = fₜ∂y = fₜ(E2 − (u/2)E3). With this N, H = −f''/(2(1+f'²)^{3/2}) and
//   ⟨∂ₜΦ, N⟩ = −fₜ/√(1+f'²) = H   ⇒   fₜ = f''/(2(1+f'²)).

#include <algorithm>
#include <cmath>
#include <functional>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "heisflow/io.hpp"
#include "heisflow/solitons.hpp"
#include "heisflow/types.hpp"

namespace heisflow {

enum class BoundaryMode { DirichletOracle, Fixed };

/// Graph profile on a uniform grid at time t.
struct FlowProfile {
  std::vector<double> u, f;
  double t = 0.0;
  BoundaryMode mode = BoundaryMode::Fixed;

  std::size_t size() const { return u.size(); }
  double dx() const { return (u.back() - u.front()) / static_cast<double>(u.size() - 1); }
};

inline void check_profile(const FlowProfile& p) {
  if (p.u.size() < 3 || p.u.size() != p.f.size()) throw Error("flow profile needs >= 3 matching samples");
  const double h = p.dx();
  if (!(h > 0.0)) throw Error("flow profile grid must be increasing");
  for (std::size_t i = 1; i < p.u.size(); ++i)
    if (std::abs((p.u[i] - p.u[i - 1]) - h) > 1e-6 * h)
      throw Error("flow profile grid is not uniform");
  for (double x : p.f)
    if (!std::isfinite(x)) throw Error("flow profile has non-finite values");
}

inline FlowProfile sample_profile(const std::function<double(double)>& f, double u0, double u1, int n,
                                  BoundaryMode mode = BoundaryMode::Fixed) {
  FlowProfile p;
  p.u = linspace(u0, u1, n);
  p.f.resize(p.u.size());
  for (std::size_t i = 0; i < p.u.size(); ++i) p.f[i] = f(p.u[i]);
  p.mode = mode;
  return p;
}

/// Oracle providing boundary values f(u, t) in DirichletOracle mode.
using GraphOracle = std::function<double(double, double)>;

struct EvolveOptions {
  double dt = 0.0;         ///< fixed step; 0 selects 0.2·dx²·min(1+f'²) each step
  double T = 0.0;          ///< final time, relative to the start profile
  GraphOracle oracle;      ///< required in DirichletOracle mode
  int snapshots = 1;       ///< profiles returned after the start, evenly spaced in time
};

/// Raised when the solution stops being finite.
class FlowDivergence : public Error {
 public:
  FlowDivergence(const std::string& what, long step) : Error(what), step_(step) {}
  long step() const noexcept { return step_; }

 private:
  long step_;
};

/// Right-hand side f''/(2(1+f'²)) by central differences on interior nodes;
/// boundary entries are zero.
inline std::vector<double> graph_rate(const FlowProfile& p) {
  const std::size_t n = p.size();
  const double h = p.dx();
  std::vector<double> r(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double d1 = (p.f[i + 1] - p.f[i - 1]) / (2.0 * h);
    const double d2 = (p.f[i + 1] - 2.0 * p.f[i] + p.f[i - 1]) / (h * h);
    r[i] = d2 / (2.0 * (1.0 + d1 * d1));
  }
  return r;
}

namespace detail {

/// Fills rate with f''/(2(1+f'²)) on interior nodes and returns min(1+f'²).
inline double rate_and_min_slope(const std::vector<double>& f, double h, std::vector<double>& rate) {
  double m = std::numeric_limits<double>::infinity();
  const double inv2h = 1.0 / (2.0 * h), invh2 = 1.0 / (h * h);
  for (std::size_t i = 1; i + 1 < f.size(); ++i) {
    const double d1 = (f[i + 1] - f[i - 1]) * inv2h;
    const double d2 = (f[i + 1] - 2.0 * f[i] + f[i - 1]) * invh2;
    const double q = 1.0 + d1 * d1;
    rate[i] = d2 / (2.0 * q);
    m = std::min(m, q);
  }
  return m;
}

}  // namespace detail

/// Explicit Euler in time, central differences in space. Returns the start
/// profile followed by `snapshots` profiles at T·k/snapshots.
inline std::vector<FlowProfile> evolve(const FlowProfile& start, const EvolveOptions& opt) {
  check_profile(start);
  if (!(opt.T > 0.0)) throw Error("evolve: T must be positive");
  if (opt.snapshots < 1) throw Error("evolve: snapshots must be >= 1");
  const double h = start.dx();
  if (opt.dt < 0.0) throw Error("evolve: dt must be non-negative");
  if (opt.dt > h * h)
    throw Error("evolve: dt = " + format_g9(opt.dt) + " exceeds the stability bound dx² = " +
                format_g9(h * h));
  if (start.mode == BoundaryMode::DirichletOracle && !opt.oracle)
    throw Error("evolve: dirichlet-from-oracle mode needs an oracle");

  std::vector<FlowProfile> out{start};
  FlowProfile cur = start;
  const double t0 = start.t;
  const std::size_t n = cur.size();
  std::vector<double> rate(n, 0.0);
  long step = 0;
  for (int k = 1; k <= opt.snapshots; ++k) {
    const double target = opt.T * k / opt.snapshots;
    while (cur.t - t0 < target) {
      const double m = detail::rate_and_min_slope(cur.f, h, rate);
      double dt = opt.dt > 0.0 ? opt.dt : 0.2 * h * h * m;
      const bool last = cur.t - t0 + dt >= target;
      if (last) dt = target - (cur.t - t0);
      double check = 0.0;
      for (std::size_t i = 1; i + 1 < n; ++i) {
        cur.f[i] += dt * rate[i];
        check += cur.f[i];
      }
      cur.t = last ? t0 + target : cur.t + dt;
      if (cur.mode == BoundaryMode::DirichletOracle) {
        cur.f.front() = opt.oracle(cur.u.front(), cur.t);
        cur.f.back() = opt.oracle(cur.u.back(), cur.t);
      }
      ++step;
      if (!std::isfinite(check + cur.f.front() + cur.f.back()))
        throw FlowDivergence("evolve: non-finite value at step " + std::to_string(step), step);
      if (last) break;
    }
    out.push_back(cur);
  }
  return out;
}

/// Closed-form graph evolution of a graph-type soliton:
///   T1Y  f(u) + A·t   (translation along y)
///   T1X  f(u − A·t)   (translation along x; the z shift is tangential)
inline GraphOracle graph_oracle(const SolitonSpec& s) {
  switch (s.family) {
    case Family::T1Y: return [s](double u, double t) { return s.f(u).value + s.A * t; };
    case Family::T1X: return [s](double u, double t) { return s.f(u - s.A * t).value; };
    default: break;
  }
  throw Error(std::string("graph_oracle: family ") + family_name(s.family) + " is not a graph");
}

/// L∞ distance on interior nodes between an evolved profile and the closed form.
inline double compare_to_soliton(const FlowProfile& evolved, const SolitonSpec& s) {
  check_profile(evolved);
  if (evolved.u.front() < s.domain.u0 - 1e-12 || evolved.u.back() > s.domain.u1 + 1e-12)
    throw Error("compare_to_soliton: profile grid leaves the spec's u-range");
  const GraphOracle exact = graph_oracle(s);
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < evolved.size(); ++i)
    worst = std::max(worst, std::abs(evolved.f[i] - exact(evolved.u[i], evolved.t)));
  return worst;
}

// u,f CSV with header.
inline void write_profile_csv(std::ostream& out, const FlowProfile& p) {
  out << "u,f\n";
  for (std::size_t i = 0; i < p.size(); ++i) out << format_g9(p.u[i]) << ',' << format_g9(p.f[i]) << '\n';
}

inline FlowProfile read_profile_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error("profile csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "u,f") throw Error("profile csv: expected header 'u,f'");
  FlowProfile p;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw Error("profile csv: bad row " + std::to_string(row));
    try {
      std::size_t used = 0;
      const double u = std::stod(line.substr(0, comma), &used);
      const std::string rest = line.substr(comma + 1);
      std::size_t used2 = 0;
      const double f = std::stod(rest, &used2);
      if (used2 != rest.size()) throw Error("trailing text");
      p.u.push_back(u);
      p.f.push_back(f);
    } catch (const std::exception&) {
      throw Error("profile csv: bad number on row " + std::to_string(row));
    }
  }
  check_profile(p);
  return p;
}

}  // namespace heisflow
