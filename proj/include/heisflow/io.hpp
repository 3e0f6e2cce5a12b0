#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "heisflow/solitons.hpp"
#include "heisflow/types.hpp"

namespace heisflow {

/// Fixed 9-significant-digit text form used by OBJ and CSV output.
inline std::string format_g9(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

/// nu × nv samples of a surface at one time, row-major in u.
struct MeshGrid {
  std::size_t nu = 0, nv = 0;
  ParamRect range;
  double t = 0.0;
  std::vector<Point> points;

  const Point& at(std::size_t i, std::size_t j) const { return points[i * nv + j]; }
};

inline MeshGrid make_mesh(const SolitonSpec& s, double t, std::size_t nu, std::size_t nv) {
  if (nu < 2 || nv < 2) throw Error("mesh grid needs at least 2x2 samples");
  MeshGrid m;
  m.nu = nu;
  m.nv = nv;
  m.range = s.domain;
  m.t = t;
  const auto us = linspace(s.domain.u0, s.domain.u1, static_cast<int>(nu));
  const auto vs = linspace(s.domain.v0, s.domain.v1, static_cast<int>(nv));
  m.points.resize(nu * nv);
  parallel_for(nu, [&](std::size_t i) {
    for (std::size_t j = 0; j < nv; ++j) m.points[i * nv + j] = soliton_point(s, us[i], vs[j], t);
  });
  return m;
}

/// Wavefront OBJ: vertices row-major, each grid quad split into two triangles.
inline void write_obj(std::ostream& out, const MeshGrid& m) {
  out << "# nu " << m.nu << " nv " << m.nv << " t " << format_g9(m.t) << "\n";
  for (const Point& p : m.points)
    out << "v " << format_g9(p.x) << ' ' << format_g9(p.y) << ' ' << format_g9(p.z) << '\n';
  for (std::size_t i = 0; i + 1 < m.nu; ++i)
    for (std::size_t j = 0; j + 1 < m.nv; ++j) {
      const std::size_t a = i * m.nv + j + 1, b = a + 1, c = a + m.nv, d = c + 1;
      out << "f " << a << ' ' << c << ' ' << d << '\n';
      out << "f " << a << ' ' << d << ' ' << b << '\n';
    }
}

inline std::string obj_filename(Family f, double t) {
  return std::string(family_name(f)) + "_t" + format_g9(t) + ".obj";
}

inline void write_residual_csv(std::ostream& out, const ResidualReport& rep) {
  out << "u,v,residual\n";
  for (std::size_t i = 0; i < rep.u.size(); ++i)
    for (std::size_t j = 0; j < rep.v.size(); ++j)
      out << format_g9(rep.u[i]) << ',' << format_g9(rep.v[j]) << ',' << format_g9(rep.at(i, j))
          << '\n';
}

inline std::ofstream open_output(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  return out;
}

}  // namespace heisflow
