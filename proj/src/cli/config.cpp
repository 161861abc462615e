// Copyright 2026 The nlpot Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nlpot/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "nlpot/nonlinear_operator.hpp"

namespace nlpot::cli {
namespace {

using nlohmann::json;

[[noreturn]] void Fail(const std::string& where, const std::string& what) {
  throw ConfigError(where + ": " + what);
}

void AllowKeys(const json& j, const std::string& where,
               std::initializer_list<const char*> keys) {
  if (!j.is_object()) Fail(where, "expected an object");
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [k, v] : j.items()) {
    if (!allowed.count(k)) Fail(where, "unknown key \"" + k + "\"");
  }
}

double Number(const json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  Fail(where, "expected a number");
}

json NumberJson(double v) {
  if (std::isinf(v)) return v > 0 ? json("inf") : json("-inf");
  return json(v);
}

double NumberOr(const json& j, const char* key, double fallback,
                const std::string& where) {
  return j.contains(key) ? Number(j.at(key), where + "." + key) : fallback;
}

std::int64_t Integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) Fail(where, "expected an integer");
  return j.get<std::int64_t>();
}

Point ParsePoint(const json& j, const std::string& where,
                 std::optional<int> dim = std::nullopt) {
  if (!j.is_array()) Fail(where, "expected an array of coordinates");
  Point p;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const double v = Number(j[i], where);
    if (!std::isfinite(v)) Fail(where, "coordinates must be finite");
    p.push_back(v);
  }
  if (dim && static_cast<int>(p.size()) != *dim) {
    Fail(where, "expected " + std::to_string(*dim) + " coordinates");
  }
  return p;
}

json PointJson(const Point& p) {
  json a = json::array();
  for (double v : p) a.push_back(v);
  return a;
}

int Dim(const json& j, const std::string& where) {
  if (!j.contains("dim")) Fail(where, "missing \"dim\"");
  const auto n = Integer(j.at("dim"), where + ".dim");
  if (n < 1 || n > 16) Fail(where, "dimension out of range");
  return static_cast<int>(n);
}

// Returns the measure and writes its normalised description.
Measure Parse(const json& j, const std::string& where, json& norm) {
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string()) {
    Fail(where, "measure needs a string \"type\"");
  }
  const std::string type = j.at("type").get<std::string>();
  norm = json::object();
  norm["type"] = type;
  Measure m = Measure::Zero(1);
  try {
    if (type == "zero") {
      AllowKeys(j, where, {"type", "dim", "scale"});
      const int n = Dim(j, where);
      norm["dim"] = n;
      m = Measure::Zero(n);
    } else if (type == "atomic") {
      AllowKeys(j, where, {"type", "dim", "atoms", "scale"});
      const int n = Dim(j, where);
      norm["dim"] = n;
      norm["atoms"] = json::array();
      std::vector<Atom> atoms;
      if (!j.contains("atoms") || !j.at("atoms").is_array()) {
        Fail(where, "atomic measure needs an \"atoms\" array");
      }
      for (const auto& a : j.at("atoms")) {
        AllowKeys(a, where + ".atoms", {"x", "mass"});
        if (!a.contains("x") || !a.contains("mass")) {
          Fail(where + ".atoms", "atom needs \"x\" and \"mass\"");
        }
        const Point x = ParsePoint(a.at("x"), where + ".atoms.x", n);
        const double mass = Number(a.at("mass"), where + ".atoms.mass");
        atoms.push_back({x, mass});
        norm["atoms"].push_back({{"x", PointJson(x)}, {"mass", mass}});
      }
      m = Measure::Atomic(n, std::move(atoms));
    } else if (type == "radial") {
      AllowKeys(j, where,
                {"type", "center", "exponent", "coefficient", "cutoff", "scale"});
      if (!j.contains("center")) Fail(where, "radial density needs \"center\"");
      RadialDensitySpec spec;
      spec.center = ParsePoint(j.at("center"), where + ".center");
      spec.exponent = NumberOr(j, "exponent", 0.0, where);
      spec.coefficient = NumberOr(j, "coefficient", 1.0, where);
      spec.cutoff = NumberOr(j, "cutoff", kInf, where);
      norm["center"] = PointJson(spec.center);
      norm["exponent"] = spec.exponent;
      norm["coefficient"] = spec.coefficient;
      norm["cutoff"] = NumberJson(spec.cutoff);
      m = Measure::Radial(std::move(spec));
    } else if (type == "dyadic") {
      AllowKeys(j, where, {"type", "dim", "level", "origin", "cells", "scale"});
      DyadicDensitySpec spec;
      spec.dim = Dim(j, where);
      spec.level = static_cast<int>(j.contains("level")
                                        ? Integer(j.at("level"), where + ".level")
                                        : 0);
      spec.origin = j.contains("origin")
                        ? ParsePoint(j.at("origin"), where + ".origin", spec.dim)
                        : Point(spec.dim, 0.0);
      norm["dim"] = spec.dim;
      norm["level"] = spec.level;
      norm["origin"] = PointJson(spec.origin);
      norm["cells"] = json::array();
      if (!j.contains("cells") || !j.at("cells").is_array()) {
        Fail(where, "dyadic density needs a \"cells\" array");
      }
      for (const auto& c : j.at("cells")) {
        AllowKeys(c, where + ".cells", {"index", "mass"});
        if (!c.contains("index") || !c.at("index").is_array() ||
            static_cast<int>(c.at("index").size()) != spec.dim ||
            !c.contains("mass")) {
          Fail(where + ".cells", "cell needs an \"index\" of length dim and a \"mass\"");
        }
        CellIndex idx;
        for (const auto& v : c.at("index")) idx.push_back(Integer(v, where + ".cells.index"));
        const double mass = Number(c.at("mass"), where + ".cells.mass");
        spec.cells[idx] += mass;
      }
      for (const auto& [idx, mass] : spec.cells) {
        norm["cells"].push_back({{"index", idx}, {"mass", mass}});
      }
      m = Measure::Dyadic(std::move(spec));
    } else if (type == "boxes") {
      AllowKeys(j, where, {"type", "dim", "pieces", "scale"});
      const int n = Dim(j, where);
      norm["dim"] = n;
      norm["pieces"] = json::array();
      if (!j.contains("pieces") || !j.at("pieces").is_array()) {
        Fail(where, "box measure needs a \"pieces\" array");
      }
      std::vector<BoxPiece> pieces;
      for (const auto& p : j.at("pieces")) {
        AllowKeys(p, where + ".pieces", {"lo", "hi", "mass"});
        if (!p.contains("lo") || !p.contains("hi") || !p.contains("mass")) {
          Fail(where + ".pieces", "piece needs \"lo\", \"hi\" and \"mass\"");
        }
        BoxPiece b{ParsePoint(p.at("lo"), where + ".pieces.lo", n),
                   ParsePoint(p.at("hi"), where + ".pieces.hi", n),
                   Number(p.at("mass"), where + ".pieces.mass")};
        norm["pieces"].push_back(
            {{"lo", PointJson(b.lo)}, {"hi", PointJson(b.hi)}, {"mass", b.mass}});
        pieces.push_back(std::move(b));
      }
      m = Measure::Boxes(n, std::move(pieces));
    } else if (type == "sum") {
      AllowKeys(j, where, {"type", "parts", "scale"});
      if (!j.contains("parts") || !j.at("parts").is_array() || j.at("parts").empty()) {
        Fail(where, "sum needs a nonempty \"parts\" array");
      }
      std::vector<Measure> parts;
      norm["parts"] = json::array();
      for (const auto& p : j.at("parts")) {
        json part_norm;
        parts.push_back(Parse(p, where + ".parts", part_norm));
        norm["parts"].push_back(part_norm);
      }
      m = Measure::Sum(std::move(parts));
    } else {
      Fail(where, "unknown measure type \"" + type + "\"");
    }
    const double scale = NumberOr(j, "scale", 1.0, where);
    norm["scale"] = scale;
    if (scale != 1.0) m = Scale(m, scale);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    Fail(where, e.what());
  }
  return m;
}

}  // namespace

Measure ParseMeasure(const json& j) {
  json norm;
  return Parse(j, "measure", norm);
}

Exponents ParseExponents(const json& j) {
  try {
    if (j.contains("plaplace")) {
      AllowKeys(j, "exponents", {"plaplace"});
      const json& p = j.at("plaplace");
      AllowKeys(p, "exponents.plaplace", {"p", "n"});
      return PlaplaceParams(Number(p.at("p"), "exponents.plaplace.p"),
                            static_cast<int>(Integer(p.at("n"), "exponents.plaplace.n")));
    }
    if (j.contains("hessian")) {
      AllowKeys(j, "exponents", {"hessian"});
      const json& h = j.at("hessian");
      AllowKeys(h, "exponents.hessian", {"k", "n"});
      return HessianParams(static_cast<int>(Integer(h.at("k"), "exponents.hessian.k")),
                           static_cast<int>(Integer(h.at("n"), "exponents.hessian.n")));
    }
    AllowKeys(j, "exponents", {"n", "alpha", "s"});
    if (!j.contains("n") || !j.contains("alpha") || !j.contains("s")) {
      Fail("exponents", "need \"n\", \"alpha\" and \"s\"");
    }
    return Exponents(static_cast<int>(Integer(j.at("n"), "exponents.n")),
                     Number(j.at("alpha"), "exponents.alpha"),
                     Number(j.at("s"), "exponents.s"));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    Fail("exponents", e.what());
  }
}

namespace {

ExperimentConfig ParseConfigImpl(const json& j) {
  AllowKeys(j, "config", {"measure", "exponents", "pole", "seed", "potential",
                          "audit", "samples", "solver"});
  if (!j.contains("measure")) Fail("config", "missing \"measure\"");
  if (!j.contains("exponents")) Fail("config", "missing \"exponents\"");
  ExperimentConfig c;
  json& norm = c.normalized;
  json measure_norm;
  c.measure = Parse(j.at("measure"), "measure", measure_norm);
  norm["measure"] = measure_norm;
  c.exponents = ParseExponents(j.at("exponents"));
  const int n = c.exponents.n();
  if (c.measure.dim() != n) Fail("config", "measure and exponents disagree on n");
  norm["exponents"] = {{"n", n}, {"alpha", c.exponents.alpha()}, {"s", c.exponents.s()}};
  c.pole = j.contains("pole") ? ParsePoint(j.at("pole"), "pole", n) : Point(n, 0.0);
  norm["pole"] = PointJson(c.pole);
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) Fail("seed", "expected a nonnegative integer");
    c.seed = j.at("seed").get<std::uint64_t>();
  }
  norm["seed"] = c.seed;

  const json pot = j.value("potential", json::object());
  AllowKeys(pot, "potential", {"probes", "rho", "kinds", "riesz_order"});
  json pot_norm = {{"probes", json::array()}, {"rho", json::array()},
                   {"kinds", json::array()}};
  for (const auto& p : pot.value("probes", json::array())) {
    c.probes.push_back(ParsePoint(p, "potential.probes", n));
    pot_norm["probes"].push_back(PointJson(c.probes.back()));
  }
  for (const auto& r : pot.value("rho", json::array({"inf"}))) {
    const double rho = Number(r, "potential.rho");
    if (!(rho > 0)) Fail("potential.rho", "truncation radii must be positive");
    c.rhos.push_back(rho);
    pot_norm["rho"].push_back(NumberJson(rho));
  }
  for (const auto& k : pot.value("kinds", json::array({"wolff"}))) {
    const std::string kind = k.is_string() ? k.get<std::string>() : "";
    if (kind == "wolff") {
      c.kinds.push_back(PotentialKind::kWolff);
    } else if (kind == "riesz") {
      c.kinds.push_back(PotentialKind::kRiesz);
    } else {
      Fail("potential.kinds", "expected \"wolff\" or \"riesz\"");
    }
    pot_norm["kinds"].push_back(kind);
  }
  c.riesz_order = NumberOr(pot, "riesz_order", c.exponents.alpha(), "potential");
  if (!(c.riesz_order > 0) || !(c.riesz_order < n)) {
    Fail("potential.riesz_order", "order must lie in (0, n)");
  }
  pot_norm["riesz_order"] = c.riesz_order;
  norm["potential"] = pot_norm;

  const json audit = j.value("audit", json::object());
  AllowKeys(audit, "audit", {"shifts", "levels"});
  json audit_norm = {{"shifts", json::array()}};
  for (const auto& s : audit.value("shifts", json::array({PointJson(Point(n, 0.0))}))) {
    c.shifts.push_back(ParsePoint(s, "audit.shifts", n));
    audit_norm["shifts"].push_back(PointJson(c.shifts.back()));
  }
  if (c.shifts.empty()) Fail("audit.shifts", "need at least one shift");
  if (audit.contains("levels") && !audit.at("levels").is_null()) {
    const json& l = audit.at("levels");
    if (!l.is_array() || l.size() != 2) Fail("audit.levels", "expected [finest, coarsest]");
    LevelRange range{static_cast<int>(Integer(l[0], "audit.levels")),
                     static_cast<int>(Integer(l[1], "audit.levels"))};
    if (range.finest > range.coarsest) Fail("audit.levels", "finest exceeds coarsest");
    c.levels = range;
    audit_norm["levels"] = {range.finest, range.coarsest};
  } else {
    audit_norm["levels"] = nullptr;
  }
  norm["audit"] = audit_norm;

  const json smp = j.value("samples", json::object());
  AllowKeys(smp, "samples", {"shells", "directions", "inner", "outer"});
  c.samples.shells = static_cast<int>(smp.contains("shells") ? Integer(smp.at("shells"), "samples.shells") : c.samples.shells);
  c.samples.directions = static_cast<int>(smp.contains("directions") ? Integer(smp.at("directions"), "samples.directions") : c.samples.directions);
  c.samples.inner = NumberOr(smp, "inner", c.samples.inner, "samples");
  c.samples.outer = NumberOr(smp, "outer", c.samples.outer, "samples");
  if (c.samples.shells < 1 || c.samples.directions < 1 || !(c.samples.inner > 0) ||
      !(c.samples.outer >= c.samples.inner) || std::isinf(c.samples.outer)) {
    Fail("samples", "need shells, directions >= 1 and 0 < inner <= outer < inf");
  }
  norm["samples"] = {{"shells", c.samples.shells}, {"directions", c.samples.directions},
                     {"inner", c.samples.inner}, {"outer", c.samples.outer}};

  const json sol = j.value("solver", json::object());
  AllowKeys(sol, "solver", {"prefactor", "max_m", "divergence_cap", "tolerance",
                            "slack", "grid_level", "c2_count", "c2_min", "c2_max"});
  SolverOptions& o = c.solver;
  o.prefactor = NumberOr(sol, "prefactor", o.prefactor, "solver");
  o.max_m = static_cast<int>(sol.contains("max_m") ? Integer(sol.at("max_m"), "solver.max_m") : o.max_m);
  o.divergence_cap = NumberOr(sol, "divergence_cap", o.divergence_cap, "solver");
  o.tolerance = NumberOr(sol, "tolerance", o.tolerance, "solver");
  o.slack = NumberOr(sol, "slack", o.slack, "solver");
  o.c2_count = static_cast<int>(sol.contains("c2_count") ? Integer(sol.at("c2_count"), "solver.c2_count") : o.c2_count);
  o.c2_min = NumberOr(sol, "c2_min", o.c2_min, "solver");
  o.c2_max = NumberOr(sol, "c2_max", o.c2_max, "solver");
  if (sol.contains("grid_level") && !sol.at("grid_level").is_null()) {
    o.grid.level = static_cast<int>(Integer(sol.at("grid_level"), "solver.grid_level"));
  }
  if (!(o.prefactor > 1) || o.max_m < 1 || !(o.divergence_cap > 0) ||
      !(o.tolerance > 0) || !(o.slack >= 0) || o.c2_count < 1 ||
      !(o.c2_min > 0) || !(o.c2_max >= o.c2_min)) {
    Fail("solver", "invalid solver options");
  }
  norm["solver"] = {{"prefactor", o.prefactor}, {"max_m", o.max_m},
                    {"divergence_cap", NumberJson(o.divergence_cap)},
                    {"tolerance", o.tolerance}, {"slack", o.slack},
                    {"grid_level", o.grid.level ? json(*o.grid.level) : json(nullptr)},
                    {"c2_count", o.c2_count}, {"c2_min", o.c2_min},
                    {"c2_max", o.c2_max}};
  return c;
}

}  // namespace

ExperimentConfig ParseConfig(const json& j) {
  try {
    return ParseConfigImpl(j);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

ExperimentConfig LoadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  return ParseConfig(j);
}

std::uint64_t ConfigHash(const ExperimentConfig& config) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : config.normalized.dump()) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace nlpot::cli
