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

#include <filesystem>
#include <iomanip>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

#include "nlpot/cli/commands.hpp"
#include "nlpot/cli/config.hpp"
#include "nlpot/cli/csv.hpp"

namespace nlpot::cli {
namespace {

using nlohmann::json;

json AtomConfig() {
  return json::parse(R"({
    "measure": {"type": "atomic", "dim": 3,
                "atoms": [{"x": [1, 0, 0], "mass": 0.5}]},
    "exponents": {"n": 3, "alpha": 1, "s": 2},
    "potential": {"probes": [[0, 0, 0], [2, 0, 0], [0, 3, 0], [1, 1, 1]]},
    "samples": {"shells": 3, "directions": 4, "inner": 0.01, "outer": 100}
  })");
}

json ZeroConfig() {
  json j = AtomConfig();
  j["measure"] = {{"type", "zero"}, {"dim", 3}};
  return j;
}

int CountRows(const std::string& csv) {
  std::istringstream in(SplitCsv(csv).body);
  std::string line;
  int rows = -1;  // header
  while (std::getline(in, line)) {
    if (!line.empty()) ++rows;
  }
  return rows;
}

TEST(Config, NormalisedFormFillsDefaults) {
  const ExperimentConfig c = ParseConfig(AtomConfig());
  EXPECT_EQ(c.normalized["potential"]["rho"], json::array({"inf"}));
  EXPECT_EQ(c.normalized["potential"]["kinds"], json::array({"wolff"}));
  EXPECT_EQ(c.normalized["seed"], 0);
  EXPECT_EQ(c.normalized["measure"]["scale"], 1.0);
  // Reparsing the normalised form is a fixed point.
  EXPECT_EQ(ParseConfig(c.normalized).normalized, c.normalized);
  EXPECT_EQ(ConfigHash(ParseConfig(c.normalized)), ConfigHash(c));
  EXPECT_NE(ConfigHash(WithSeed(c, 9)), ConfigHash(c));
}

TEST(Config, RejectsBadInput) {
  json j = AtomConfig();
  j["bogus"] = 1;
  EXPECT_THROW(ParseConfig(j), ConfigError);
  j = AtomConfig();
  j["measure"]["atoms"][0]["mass"] = -1;
  EXPECT_THROW(ParseConfig(j), ConfigError);
  j = AtomConfig();
  j["exponents"]["s"] = 1;
  EXPECT_THROW(ParseConfig(j), ConfigError);
  j = AtomConfig();
  j["exponents"]["n"] = 2;
  EXPECT_THROW(ParseConfig(j), ConfigError);
  j = AtomConfig();
  j["measure"]["type"] = "spline";
  EXPECT_THROW(ParseConfig(j), ConfigError);
  j = AtomConfig();
  j["potential"]["rho"] = {0};
  EXPECT_THROW(ParseConfig(j), ConfigError);
  EXPECT_THROW(LoadConfig("/nonexistent/config.json"), ConfigError);
  EXPECT_THROW(RunCommand("nonsense", ParseConfig(AtomConfig())), ConfigError);
}

TEST(Config, ExponentShorthands) {
  const Exponents h = ParseExponents(json::parse(R"({"hessian": {"k": 1, "n": 3}})"));
  EXPECT_EQ(h.kernel_exp(), -1.0);
  const Exponents p = ParseExponents(json::parse(R"({"plaplace": {"p": 2.5, "n": 4}})"));
  EXPECT_NEAR(p.kernel_exp(), -1.0, 1e-15);
}

TEST(Potential, OneRowPerProbe) {
  const CommandResult r = RunCommand("potential", ParseConfig(AtomConfig()));
  EXPECT_EQ(r.exit_code, kExitOk);
  EXPECT_EQ(CountRows(r.csv), 4);
  EXPECT_EQ(r.summary, "rows=4");
  EXPECT_NE(r.csv.find("1 1 1,inf,wolff,"), std::string::npos);

  json j = AtomConfig();
  j["potential"]["probes"] = json::array();
  const CommandResult empty = RunCommand("potential", ParseConfig(j));
  EXPECT_EQ(empty.exit_code, kExitOk);
  EXPECT_EQ(CountRows(empty.csv), 0);
  EXPECT_EQ(SplitCsv(empty.csv).body, "point,rho,kind,value\n");
}

TEST(Potential, HardyCentreIsInfinite) {
  json j = AtomConfig();
  j["measure"] = json::parse(
      R"({"type": "radial", "center": [0, 0, 0], "exponent": -2, "coefficient": 1})");
  j["potential"]["probes"] = {{0, 0, 0}};
  const CommandResult r = RunPotential(ParseConfig(j));
  EXPECT_EQ(SplitCsv(r.csv).body, "point,rho,kind,value\n0 0 0,inf,wolff,inf\n");
}

TEST(Audit, AtomicAndZero) {
  EXPECT_EQ(RunAudit(ParseConfig(AtomConfig())).summary, "supRatio=inf");
  EXPECT_EQ(RunAudit(ParseConfig(ZeroConfig())).summary, "supRatio=0");
}

TEST(Sandwich, ZeroPassesAndIsDeterministic) {
  const ExperimentConfig c = ParseConfig(ZeroConfig());
  const CommandResult a = RunCommand("sandwich", c);
  const CommandResult b = RunCommand("sandwich", c);
  EXPECT_EQ(a.exit_code, kExitOk);
  EXPECT_EQ(a.summary.rfind("verdict=pass", 0), 0u);
  EXPECT_EQ(a.csv, b.csv);
  const CommandResult stamped = RunCommand("sandwich", c, true);
  EXPECT_EQ(SplitCsv(stamped.csv).body, SplitCsv(a.csv).body);
  std::ostringstream hex;
  hex << "config_hash=" << std::hex << std::setw(16) << std::setfill('0') << ConfigHash(c);
  bool has_hash = false;
  for (const auto& line : SplitCsv(a.csv).comments) {
    has_hash = has_hash || line.find(hex.str()) != std::string::npos;
  }
  EXPECT_TRUE(has_hash);
}

TEST(Equivalence, Verdicts) {
  EXPECT_EQ(RunEquivalence(ParseConfig(ZeroConfig())).summary, "equivalent");
  EXPECT_EQ(RunEquivalence(ParseConfig(AtomConfig())).summary, "not-equivalent");
  json j = ZeroConfig();
  j["measure"] = json::parse(
      R"({"type": "radial", "center": [0, 0, 0], "coefficient": 0.02, "cutoff": 1})");
  EXPECT_EQ(RunEquivalence(ParseConfig(j)).summary, "equivalent");
}

TEST(Manifest, RoundTrip) {
  RunManifest m;
  m.version = ToolkitVersion();
  m.config_hash = 0xfedcba9876543210ULL;
  m.seed = 17;
  m.wall_seconds = 1.25;
  m.outputs["audit"] = "out/audit.csv";
  m.config = ParseConfig(AtomConfig()).normalized;
  const RunManifest back = ParseManifest(json::parse(ManifestJson(m).dump()));
  EXPECT_EQ(back.version, m.version);
  EXPECT_EQ(back.config_hash, m.config_hash);
  EXPECT_EQ(back.seed, m.seed);
  EXPECT_EQ(back.wall_seconds, m.wall_seconds);
  EXPECT_EQ(back.outputs, m.outputs);
  EXPECT_EQ(back.config, m.config);
}

TEST(Files, WriteReadAndConfigFromDisk) {
  const auto dir = std::filesystem::temp_directory_path() / "nlpot_cli_test";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "config.json").string();
  WriteTextFile(path, AtomConfig().dump());
  EXPECT_EQ(LoadConfig(path), ParseConfig(AtomConfig()));
  WriteTextFile(path, "{ not json");
  EXPECT_THROW(LoadConfig(path), ConfigError);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace nlpot::cli
