// heisflow: command-line front end.
//
// Exit codes: 0 success / all checks pass, 1 a check failed or a runtime
// error (e.g. a profile leaving its domain), 2 usage error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "heisflow/heisflow.hpp"

namespace fs = std::filesystem;
using namespace heisflow;

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct UsageError : Error {
  using Error::Error;
};

SpecDocument load_spec_or_usage(const std::string& path) {
  try {
    return load_spec(path);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

void write_json_file(const fs::path& path, const nlohmann::json& j) {
  auto out = open_output(path);
  out << j.dump(2) << '\n';
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  std::string suite = "all";
  std::uint64_t seed = 7;
  std::string out;
};

int cmd_verify(const VerifyArgs& a) {
  const VerifyReport rep = run_suite(a.suite, a.seed);
  for (const auto& c : rep.checks)
    std::fprintf(stderr, "%-44s %s  max_error=%.3e  tol=%.1e\n", c.name.c_str(), c.pass ? "pass" : "FAIL",
                 c.max_error, c.tolerance);
  const nlohmann::json j = to_json(rep);
  if (a.out.empty())
    std::cout << j.dump(2) << '\n';
  else
    write_json_file(a.out, j);
  return rep.all_pass() ? kOk : kFail;
}

// ---------------------------------------------------------------- mesh

struct MeshArgs {
  std::string spec;
  std::vector<double> times{0.0};
  int nu = 41, nv = 21;
  std::string out = ".";
};

int cmd_mesh(const MeshArgs& a) {
  if (a.nu < 2 || a.nv < 2) throw UsageError("mesh: --nu and --nv must be >= 2");
  const SpecDocument doc = load_spec_or_usage(a.spec);
  const SolitonSpec s = build_spec(doc);
  for (double t : a.times) {
    const MeshGrid m = make_mesh(s, t, static_cast<std::size_t>(a.nu), static_cast<std::size_t>(a.nv));
    const fs::path path = fs::path(a.out) / obj_filename(s.family, t);
    auto out = open_output(path);
    write_obj(out, m);
    std::cout << path.string() << '\n';
  }
  return kOk;
}

// ---------------------------------------------------------------- residual

struct ResidualArgs {
  std::string spec;
  double t = 0.0;
  int nu = 41, nv = 21;
  std::string out = "residual.csv";
  std::optional<double> tol;
};

int cmd_residual(const ResidualArgs& a) {
  if (a.nu < 1 || a.nv < 1) throw UsageError("residual: empty grid (--nu and --nv must be >= 1)");
  const SpecDocument doc = load_spec_or_usage(a.spec);
  const SolitonSpec s = build_spec(doc);
  const ResidualReport rep =
      soliton_residual(s, linspace(doc.uRange[0], doc.uRange[1], a.nu), linspace(doc.vRange[0], doc.vRange[1], a.nv), a.t);
  {
    auto out = open_output(a.out);
    write_residual_csv(out, rep);
  }
  const nlohmann::json side{{"family", family_name(s.family)},
                            {"t", a.t},
                            {"nu", a.nu},
                            {"nv", a.nv},
                            {"maxAbs", rep.max_abs},
                            {"meanAbs", rep.mean_abs},
                            {"degenerateCount", rep.degenerate_count},
                            {"label", rep.label},
                            {"spec", to_json(doc)}};
  write_json_file(a.out + ".json", side);
  std::fprintf(stderr, "max|r| = %.9g  mean|r| = %.9g  degenerate = %zu%s\n", rep.max_abs, rep.mean_abs,
               rep.degenerate_count, rep.label.empty() ? "" : ("  label = " + rep.label).c_str());
  if (a.tol && !(rep.max_abs <= *a.tol)) return kFail;
  return kOk;
}

// ---------------------------------------------------------------- geodesic

struct GeodesicArgs {
  double A = 1.0, B = 0.0, C = 1.0, len = 5.0;
  int samples = 101;
  std::string form = "marenich";
  bool integrate = false;
  int steps = 5000;
  std::string out;
};

int cmd_geodesic(const GeodesicArgs& a) {
  if (!(a.len > 0.0)) throw UsageError("geodesic: --len must be positive");
  if (a.samples < 2) throw UsageError("geodesic: --samples must be >= 2");
  if (a.integrate && a.steps % (a.samples - 1) != 0)
    throw UsageError("geodesic: --steps must be a multiple of --samples minus 1");

  const GeodesicParams g{a.A, a.B, a.C};
  Curve curve;
  CoordVector v0;
  if (a.C == 0.0) {
    curve = [g](double u) { return geodesic_horizontal(g.A, g.B, u); };
    v0 = {a.A, a.B, 0.0};
  } else if (a.form == "adapted") {
    curve = [g](double u) { return helix_geodesic(g, u); };
    v0 = helix_geodesic_velocity0(g);
  } else {
    curve = [g](double u) { return geodesic_closed_form(g, u); };
    v0 = geodesic_closed_form_velocity0(g);
  }

  std::ofstream file;
  if (!a.out.empty()) file = open_output(a.out);
  std::ostream& out = a.out.empty() ? std::cout : file;
  out << (a.integrate ? "u,x,y,z,x_rk4,y_rk4,z_rk4\n" : "u,x,y,z\n");
  const auto us = linspace(0.0, a.len, a.samples);
  GeodesicPath path;
  if (a.integrate) path = geodesic_integrate({0, 0, 0}, v0, a.len, a.steps);
  double gap = 0.0;
  const int stride = a.integrate ? a.steps / (a.samples - 1) : 1;
  for (std::size_t i = 0; i < us.size(); ++i) {
    const Point p = curve(us[i]);
    out << format_g9(us[i]) << ',' << format_g9(p.x) << ',' << format_g9(p.y) << ',' << format_g9(p.z);
    if (a.integrate) {
      const Point q = path[i * static_cast<std::size_t>(stride)].p;
      gap = std::max(gap, max_abs(p - q));
      out << ',' << format_g9(q.x) << ',' << format_g9(q.y) << ',' << format_g9(q.z);
    }
    out << '\n';
  }
  if (a.integrate) std::fprintf(stderr, "max |closed form - rk4| = %.9g\n", gap);
  return kOk;
}

// ---------------------------------------------------------------- flow

struct FlowArgs {
  bool grim = false;
  std::string spec, profile;
  double A = 0.5, T = 0.2, dx = 2e-3, dt = 0.0;
  std::string out;
  std::optional<double> tol;
};

int cmd_flow(const FlowArgs& a) {
  const int sources = (a.grim ? 1 : 0) + (a.spec.empty() ? 0 : 1) + (a.profile.empty() ? 0 : 1);
  if (sources != 1) throw UsageError("flow: give exactly one of --grim, --spec, --profile");
  if (!(a.T > 0.0)) throw UsageError("flow: --T must be positive");
  if (!(a.dx > 0.0)) throw UsageError("flow: --dx must be positive");

  std::optional<SolitonSpec> spec;
  FlowProfile start;
  if (!a.profile.empty()) {
    std::ifstream in(a.profile);
    if (!in) throw UsageError("flow: cannot open '" + a.profile + "'");
    start = read_profile_csv(in);
  } else {
    if (a.grim) {
      if (a.A == 0.0) throw UsageError("flow: --A must be nonzero");
      // f = −log cos(2Au)/(2A) on |2Au| <= 1.3.
      SolitonSpec s = grim_reaper_spec(1.3 / (2.0 * std::abs(a.A)));
      s.A = a.A;
      s.f = t1y_provider(s.A, s.B, s.C);
      spec = s;
    } else {
      const SpecDocument doc = load_spec_or_usage(a.spec);
      if (doc.family != Family::T1X && doc.family != Family::T1Y)
        throw UsageError("flow: --spec must be a T1X or T1Y family");
      spec = build_spec(doc);
    }
    const double u0 = spec->domain.u0, u1 = spec->domain.u1;
    const int n = static_cast<int>(std::lround((u1 - u0) / a.dx)) + 1;
    if (n < 3) throw UsageError("flow: --dx too large for the u-range");
    const Profile f = spec->f;
    start = sample_profile([&f](double u) { return f(u).value; }, u0, u1, n, BoundaryMode::DirichletOracle);
  }

  EvolveOptions opt;
  opt.T = a.T;
  opt.dt = a.dt;
  if (spec) opt.oracle = graph_oracle(*spec);
  if (a.dt > start.dx() * start.dx()) throw UsageError("flow: --dt exceeds the stability bound dx^2");
  const FlowProfile end = evolve(start, opt).back();

  if (!a.out.empty()) {
    auto out = open_output(a.out);
    write_profile_csv(out, end);
  }
  nlohmann::json summary{{"T", a.T}, {"dx", start.dx()}, {"nodes", start.size()},
                         {"boundary", start.mode == BoundaryMode::DirichletOracle ? "dirichlet-from-oracle" : "fixed"}};
  double err = 0.0;
  if (spec) {
    err = compare_to_soliton(end, *spec);
    summary["family"] = family_name(spec->family);
    summary["maxInteriorError"] = err;
  }
  std::cout << summary.dump(2) << '\n';
  if (a.tol && spec && !(err <= *a.tol)) return kFail;
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heisenberg group geometry and mean curvature flow solitons"};
  app.require_subcommand(1);

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Run a suite of numerical checks; JSON report");
  verify->add_option("--suite", va.suite, "core|isometry|geodesic|thm1|thm2|flow|all")
      ->check(CLI::IsMember(suite_names()));
  verify->add_option("--seed", va.seed, "RNG seed");
  verify->add_option("--out", va.out, "Report path (default: stdout)");

  MeshArgs ma;
  auto* mesh = app.add_subcommand("mesh", "Export OBJ meshes <family>_t<value>.obj, one per time");
  mesh->add_option("--spec", ma.spec, "SolitonSpec JSON")->required();
  mesh->add_option("--t", ma.times, "Times (repeat or comma-separate)")->delimiter(',');
  mesh->add_option("--nu", ma.nu, "Samples in u (>= 2)");
  mesh->add_option("--nv", ma.nv, "Samples in v (>= 2)");
  mesh->add_option("--out", ma.out, "Output directory");

  ResidualArgs ra;
  auto* residual = app.add_subcommand(
      "residual", "Soliton residual on the spec's grid. CSV columns u,v,residual; JSON sidecar <out>.json");
  residual->add_option("--spec", ra.spec, "SolitonSpec JSON")->required();
  residual->add_option("--t", ra.t, "Time");
  residual->add_option("--nu", ra.nu, "Samples in u");
  residual->add_option("--nv", ra.nv, "Samples in v");
  residual->add_option("--out", ra.out, "CSV path");
  residual->add_option("--tol", ra.tol, "Exit 1 when max|r| exceeds this");

  GeodesicArgs ga;
  auto* geodesic = app.add_subcommand(
      "geodesic",
      "Geodesic samples from the origin. CSV columns u,x,y,z (plus x_rk4,y_rk4,z_rk4 with --integrate). "
      "C = 0 gives the horizontal line (Au, Bu, 0)");
  geodesic->add_option("--A", ga.A, "Helix parameter A");
  geodesic->add_option("--B", ga.B, "Helix parameter B");
  geodesic->add_option("--C", ga.C, "Helix parameter C");
  geodesic->add_option("--len", ga.len, "Parameter length");
  geodesic->add_option("--samples", ga.samples, "Rows written");
  geodesic->add_option("--form", ga.form, "marenich (literal formula) or adapted (helix of this metric)")
      ->check(CLI::IsMember({"marenich", "adapted"}));
  geodesic->add_flag("--integrate", ga.integrate, "Also integrate with RK4 from the same initial data");
  geodesic->add_option("--steps", ga.steps, "RK4 steps");
  geodesic->add_option("--out", ga.out, "CSV path (default: stdout)");

  FlowArgs fa;
  auto* flow = app.add_subcommand(
      "flow", "Explicit graph flow f_t = f''/(2(1+f'^2)). Final profile CSV columns u,f; JSON summary on stdout");
  flow->add_flag("--grim", fa.grim, "Grim Reaper start profile -log cos(2Au)/(2A)");
  flow->add_option("--spec", fa.spec, "T1X or T1Y SolitonSpec JSON");
  flow->add_option("--profile", fa.profile, "Start profile CSV (u,f); fixed boundaries");
  flow->add_option("--A", fa.A, "Grim Reaper speed A");
  flow->add_option("--T", fa.T, "Final time");
  flow->add_option("--dx", fa.dx, "Grid step");
  flow->add_option("--dt", fa.dt, "Time step (0: automatic)");
  flow->add_option("--out", fa.out, "Final profile CSV");
  flow->add_option("--tol", fa.tol, "Exit 1 when the oracle error exceeds this");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*verify) return cmd_verify(va);
    if (*mesh) return cmd_mesh(ma);
    if (*residual) return cmd_residual(ra);
    if (*geodesic) return cmd_geodesic(ga);
    if (*flow) return cmd_flow(fa);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what();
    if (!std::isnan(e.where())) std::cerr << " (u = " << format_g9(e.where()) << ")";
    std::cerr << '\n';
    return kFail;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFail;
  }
  return kUsage;
}
