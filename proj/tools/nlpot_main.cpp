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

// nlpot <command> --config PATH [--out DIR] [--seed N] [--stamp]
//
// Writes DIR/<command>.csv and DIR/manifest.json and prints a one-line
// summary.  Exit codes: 0 success, 1 failed verdict, 2 config error,
// 3 numeric failure.

#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "nlpot/cli/commands.hpp"
#include "nlpot/cli/csv.hpp"

namespace {

using nlpot::cli::ConfigError;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nonlinear potential toolkit"};
  app.require_subcommand(1);
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  bool stamp = false;
  for (const std::string& name : nlpot::cli::CommandNames()) {
    CLI::App* sub = app.add_subcommand(name, "run the " + name + " command");
    sub->add_option("--config", config_path, "JSON configuration")->required();
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--seed", seed, "seed overriding the configured one");
    sub->add_flag("--stamp", stamp, "add a UTC timestamp to the CSV header");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : nlpot::cli::kExitConfig;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  const auto start = std::chrono::steady_clock::now();
  try {
    nlpot::cli::ExperimentConfig config = nlpot::cli::LoadConfig(config_path);
    if (seed) config = nlpot::cli::WithSeed(config, *seed);
    const nlpot::cli::CommandResult result =
        nlpot::cli::RunCommand(command, config, stamp);

    std::filesystem::create_directories(out_dir);
    const std::string csv_path =
        (std::filesystem::path(out_dir) / (command + ".csv")).string();
    nlpot::cli::WriteTextFile(csv_path, result.csv);

    nlpot::cli::RunManifest manifest;
    manifest.version = nlpot::cli::ToolkitVersion();
    manifest.config_hash = nlpot::cli::ConfigHash(config);
    manifest.seed = config.seed;
    manifest.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    manifest.outputs[command] = csv_path;
    manifest.config = config.normalized;
    nlpot::cli::WriteTextFile(
        (std::filesystem::path(out_dir) / "manifest.json").string(),
        nlpot::cli::ManifestJson(manifest).dump(2) + "\n");

    std::cout << command << ": " << result.summary << "\n";
    return result.exit_code;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return nlpot::cli::kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return nlpot::cli::kExitNumeric;
  }
}
