#pragma once

// JSON form of a soliton spec:
//   {family, A, B, C, D, f0, g0, vStar, uRange, vRange, steps}
//
// Profiles are not serialized; each family has a canonical one:
//   T1X  closed form, plus branch
//   T1Y  closed form
//   T1R  RK4 of f' = tan[A(u² + f²) + B] from f(u₀) = f0
//   T2*  f(u) = u and the Riccati reduction for g at v = vStar, started from
//        y(u₀) = 2g'(u₀) − vStar = f0 and g(u₀) = g0
// `steps` is the RK4 step count over uRange (0 selects the default step).

#include <array>
#include <fstream>
#include <set>
#include <string>

#include <json.hpp>

#include "heisflow/profiles.hpp"
#include "heisflow/solitons.hpp"

namespace heisflow {

struct SpecDocument {
  Family family = Family::T1X;
  double A = 1.0, B = 0.0, C = 0.0, D = 1.0;
  double f0 = 0.0, g0 = 0.0, vStar = 0.0;
  std::array<double, 2> uRange{0.0, 1.0}, vRange{-1.0, 1.0};
  int steps = 0;
};

inline nlohmann::json to_json(const SpecDocument& d) {
  return nlohmann::json{{"family", family_name(d.family)},
                        {"A", d.A},
                        {"B", d.B},
                        {"C", d.C},
                        {"D", d.D},
                        {"f0", d.f0},
                        {"g0", d.g0},
                        {"vStar", d.vStar},
                        {"uRange", d.uRange},
                        {"vRange", d.vRange},
                        {"steps", d.steps}};
}

/// Strict reader: unknown keys are rejected; family, A, uRange and vRange are required.
inline SpecDocument spec_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error("spec: top level must be a JSON object");
  static const std::set<std::string> known{"family", "A",     "B",      "C",      "D",    "f0",
                                           "g0",     "vStar", "uRange", "vRange", "steps"};
  for (const auto& item : j.items())
    if (!known.count(item.key())) throw Error("spec: unknown field '" + item.key() + "'");
  for (const char* key : {"family", "A", "uRange", "vRange"})
    if (!j.contains(key)) throw Error(std::string("spec: missing field '") + key + "'");

  auto number = [&](const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number()) throw Error(std::string("spec: field '") + key + "' must be a number");
    return j.at(key).get<double>();
  };
  auto range = [&](const char* key) {
    const auto& r = j.at(key);
    if (!r.is_array() || r.size() != 2 || !r[0].is_number() || !r[1].is_number())
      throw Error(std::string("spec: field '") + key + "' must be [lo, hi]");
    std::array<double, 2> out{r[0].get<double>(), r[1].get<double>()};
    if (!(out[0] < out[1])) throw Error(std::string("spec: field '") + key + "' needs lo < hi");
    return out;
  };

  SpecDocument d;
  if (!j.at("family").is_string()) throw Error("spec: field 'family' must be a string");
  d.family = family_from_string(j.at("family").get<std::string>());
  d.A = number("A", d.A);
  d.B = number("B", d.B);
  d.C = number("C", d.C);
  d.D = number("D", d.D);
  d.f0 = number("f0", d.f0);
  d.g0 = number("g0", d.g0);
  d.vStar = number("vStar", d.vStar);
  d.uRange = range("uRange");
  d.vRange = range("vRange");
  if (j.contains("steps")) {
    if (!j.at("steps").is_number_integer() || j.at("steps").get<long long>() < 0)
      throw Error("spec: field 'steps' must be a non-negative integer");
    d.steps = j.at("steps").get<int>();
  }
  return d;
}

inline SpecDocument load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open spec file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error("spec '" + path + "': " + e.what());
  }
  return spec_from_json(j);
}

inline int effective_steps(const SpecDocument& d) {
  return d.steps > 0 ? d.steps : default_steps(d.uRange[0], d.uRange[1]);
}

/// Spec with the canonical profile of the family. A truncated T1R profile
/// raises DomainError at the truncation point.
inline SolitonSpec build_spec(const SpecDocument& d) {
  SolitonSpec s;
  s.family = d.family;
  s.A = d.A;
  s.B = d.B;
  s.C = d.C;
  s.D = d.D;
  s.domain = {d.uRange[0], d.uRange[1], d.vRange[0], d.vRange[1]};
  const int n = effective_steps(d);
  switch (d.family) {
    case Family::T1X: s.f = t1x_provider(d.A, d.D, d.B); break;
    case Family::T1Y: s.f = t1y_provider(d.A, d.B, d.C); break;
    case Family::T1R: {
      ProfileSolution sol = t1r_profile(d.A, d.B, d.f0, d.uRange[0], d.uRange[1], n);
      if (sol.truncated) throw DomainError("T1R profile: " + sol.stop_reason, sol.u.back());
      s.f = sampled_profile(std::move(sol));
      break;
    }
    case Family::T2R:
    case Family::T2X:
    case Family::T2Z: {
      ProfileSolution sol = t2_matching_profile(d.family, d.A, d.B, d.C, d.vStar, d.f0, d.g0,
                                                d.uRange[0], d.uRange[1], n);
      if (sol.truncated) throw DomainError("T2 profile: " + sol.stop_reason, sol.u.back());
      s.f = affine_provider(1.0, 0.0);
      s.g = sampled_profile(std::move(sol));
      break;
    }
  }
  validate(s);
  return s;
}

}  // namespace heisflow
