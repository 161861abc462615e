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

#include "nlpot/cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <sstream>

#include "nlpot/cli/csv.hpp"
#include "nlpot/format.hpp"
#include "nlpot/potential.hpp"
#include "nlpot/solver.hpp"

#ifndef NLPOT_VERSION
#define NLPOT_VERSION "0.0.0"
#endif

namespace nlpot::cli {
namespace {

std::string UtcStamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string HashHex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace

const char* ToolkitVersion() { return NLPOT_VERSION; }

const std::vector<std::string>& CommandNames() {
  static const std::vector<std::string> names = {"potential", "audit",
                                                 "sandwich", "equivalence"};
  return names;
}

CommandResult RunPotential(const ExperimentConfig& config) {
  CommandResult r;
  std::ostringstream out;
  out << "point,rho,kind,value\n";
  int rows = 0, bad = 0;
  for (const Point& x : config.probes) {
    for (double rho : config.rhos) {
      for (PotentialKind kind : config.kinds) {
        const double value =
            kind == PotentialKind::kWolff
                ? Wolff(config.measure, config.exponents, x, rho)
                : Riesz(config.measure, config.riesz_order, x, rho);
        if (std::isnan(value)) ++bad;
        out << PointField(x) << ',' << FormatDouble(rho) << ','
            << (kind == PotentialKind::kWolff ? "wolff" : "riesz") << ','
            << FormatDouble(value) << '\n';
        ++rows;
      }
    }
  }
  r.csv = out.str();
  r.summary = "rows=" + std::to_string(rows);
  if (bad > 0) {
    r.exit_code = kExitNumeric;
    r.summary += " nan=" + std::to_string(bad);
  }
  return r;
}

CommandResult RunAudit(const ExperimentConfig& config) {
  const CarlesonReport report =
      CarlesonAudit(config.measure, config.exponents, config.shifts, config.levels);
  CommandResult r;
  r.csv = CarlesonCsv(report);
  r.summary = "supRatio=" + FormatDouble(report.sup_ratio);
  return r;
}

CommandResult RunSandwich(const ExperimentConfig& config) {
  const SampleSet samples =
      MakeSampleSet(config.measure, config.pole, config.seed, config.samples);
  const SandwichReport report =
      Sandwich(config.measure, config.exponents, samples, config.solver);
  CommandResult r;
  r.csv = SandwichCsv(report);
  int failed = 0;
  for (const auto& row : report.rows) failed += row.pass ? 0 : 1;
  r.summary = std::string("verdict=") + (report.pass ? "pass" : "fail") +
              " samples=" + std::to_string(report.rows.size()) +
              " failed=" + std::to_string(failed);
  if (!report.diagnostics.empty()) r.summary += " (" + report.diagnostics + ")";
  r.exit_code = report.pass ? kExitOk : kExitVerdictFail;
  return r;
}

CommandResult RunEquivalence(const ExperimentConfig& config) {
  const SampleSet samples =
      MakeSampleSet(config.measure, config.pole, config.seed, config.samples);
  const EquivalenceReport report =
      EquivalenceCheck(config.measure, config.exponents, samples, config.solver);
  CommandResult r;
  std::ostringstream out;
  out << "potential,sup,min_ratio,max_ratio,verdict\n"
      << report.potential << ',' << FormatDouble(report.sup) << ','
      << FormatDouble(report.min_ratio) << ',' << FormatDouble(report.max_ratio)
      << ',' << ToString(report.verdict) << '\n';
  if (!report.diagnostics.empty()) out << "# diagnostics=" << report.diagnostics << '\n';
  r.csv = out.str();
  r.summary = ToString(report.verdict);
  return r;
}

CommandResult RunCommand(const std::string& name, const ExperimentConfig& config,
                         bool stamp) {
  CommandResult r;
  if (name == "potential") {
    r = RunPotential(config);
  } else if (name == "audit") {
    r = RunAudit(config);
  } else if (name == "sandwich") {
    r = RunSandwich(config);
  } else if (name == "equivalence") {
    r = RunEquivalence(config);
  } else {
    throw ConfigError("unknown command \"" + name + "\"");
  }
  std::string preamble = std::string("# nlpot ") + ToolkitVersion() +
                         " command=" + name +
                         " config_hash=" + HashHex(ConfigHash(config)) +
                         " seed=" + std::to_string(config.seed) + "\n";
  preamble += "# config=" + config.normalized.dump() + "\n";
  if (stamp) preamble += "# stamp=" + UtcStamp() + "\n";
  r.csv = preamble + r.csv;
  return r;
}

ExperimentConfig WithSeed(const ExperimentConfig& config, std::uint64_t seed) {
  ExperimentConfig c = config;
  c.seed = seed;
  c.normalized["seed"] = seed;
  return c;
}

nlohmann::json ManifestJson(const RunManifest& m) {
  nlohmann::json outputs = nlohmann::json::object();
  for (const auto& [k, v] : m.outputs) outputs[k] = v;
  return {{"version", m.version},
          {"config_hash", HashHex(m.config_hash)},
          {"seed", m.seed},
          {"wall_seconds", m.wall_seconds},
          {"outputs", outputs},
          {"config", m.config}};
}

RunManifest ParseManifest(const nlohmann::json& j) {
  try {
    RunManifest m;
    m.version = j.at("version").get<std::string>();
    m.config_hash = std::stoull(j.at("config_hash").get<std::string>(), nullptr, 16);
    m.seed = j.at("seed").get<std::uint64_t>();
    m.wall_seconds = j.at("wall_seconds").get<double>();
    for (const auto& [k, v] : j.at("outputs").items()) m.outputs[k] = v.get<std::string>();
    m.config = j.at("config");
    return m;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("malformed manifest: ") + e.what());
  }
}

}  // namespace nlpot::cli
