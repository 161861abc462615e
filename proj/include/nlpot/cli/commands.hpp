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

#ifndef NLPOT_CLI_COMMANDS_HPP_
#define NLPOT_CLI_COMMANDS_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nlpot/cli/config.hpp"

namespace nlpot::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerdictFail = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumeric = 3;

const char* ToolkitVersion();

// Output of one command: the full CSV document (preamble comments, header,
// rows, trailing summary comments) and a one-line summary for stdout.
struct CommandResult {
  int exit_code = kExitOk;
  std::string csv;
  std::string summary;
};

// Columns: point,rho,kind,value.
CommandResult RunPotential(const ExperimentConfig& config);
// Carleson rows and summary line.
CommandResult RunAudit(const ExperimentConfig& config);
// Sandwich rows and constants; exit 1 when any sample fails.
CommandResult RunSandwich(const ExperimentConfig& config);
// Columns: potential,sup,min_ratio,max_ratio,verdict.
CommandResult RunEquivalence(const ExperimentConfig& config);

const std::vector<std::string>& CommandNames();

// Dispatches by name and prefixes the CSV with "# " lines naming the
// toolkit version, command, config hash, seed and normalised config, plus a
// UTC timestamp when `stamp` is set.  Throws ConfigError for unknown names.
CommandResult RunCommand(const std::string& name, const ExperimentConfig& config,
                         bool stamp = false);

// The config with `seed` replacing the configured one.
ExperimentConfig WithSeed(const ExperimentConfig& config, std::uint64_t seed);

struct RunManifest {
  std::string version;
  std::uint64_t config_hash = 0;
  std::uint64_t seed = 0;
  double wall_seconds = 0;
  std::map<std::string, std::string> outputs;  // command -> CSV path
  nlohmann::json config;                       // normalised config
};

nlohmann::json ManifestJson(const RunManifest& manifest);
RunManifest ParseManifest(const nlohmann::json& j);

}  // namespace nlpot::cli

#endif  // NLPOT_CLI_COMMANDS_HPP_
