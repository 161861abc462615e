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

#ifndef NLPOT_CLI_CONFIG_HPP_
#define NLPOT_CLI_CONFIG_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "nlpot/dyadic.hpp"
#include "nlpot/exponents.hpp"
#include "nlpot/field.hpp"
#include "nlpot/measure.hpp"
#include "nlpot/potential.hpp"
#include "nlpot/solver.hpp"

namespace nlpot::cli {

// Raised for anything wrong with a configuration; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One experiment.  `normalized` is the configuration with every default
// written out; two configs are equal when their normalised forms are.
struct ExperimentConfig {
  nlohmann::json normalized;

  Measure measure = Measure::Zero(1);
  Exponents exponents{3, 1.0, 2.0};
  Point pole;
  std::uint64_t seed = 0;

  // potential
  std::vector<Point> probes;
  std::vector<double> rhos;
  std::vector<PotentialKind> kinds;
  double riesz_order = 0;

  // audit
  std::vector<Point> shifts;
  std::optional<LevelRange> levels;

  // sandwich and equivalence
  SampleOptions samples;
  SolverOptions solver;

  bool operator==(const ExperimentConfig& other) const {
    return normalized == other.normalized;
  }
};

// Measure descriptions:
//   {"type": "zero", "dim": n}
//   {"type": "atomic", "dim": n, "atoms": [{"x": [...], "mass": m}, ...]}
//   {"type": "radial", "center": [...], "exponent": g, "coefficient": c,
//    "cutoff": R}
//   {"type": "dyadic", "dim": n, "level": k, "origin": [...],
//    "cells": [{"index": [...], "mass": m}, ...]}
//   {"type": "boxes", "dim": n, "pieces": [{"lo": [...], "hi": [...],
//    "mass": m}, ...]}
//   {"type": "sum", "parts": [...]}
// Any of them may carry "scale": lambda.  Numbers may be given as the
// strings "inf" and "-inf".
Measure ParseMeasure(const nlohmann::json& j);

// Exponents as {"n", "alpha", "s"}, {"plaplace": {"p", "n"}} or
// {"hessian": {"k", "n"}}.
Exponents ParseExponents(const nlohmann::json& j);

ExperimentConfig ParseConfig(const nlohmann::json& j);
ExperimentConfig LoadConfig(const std::string& path);

// FNV-1a over the compact dump of the normalised configuration.
std::uint64_t ConfigHash(const ExperimentConfig& config);

}  // namespace nlpot::cli

#endif  // NLPOT_CLI_CONFIG_HPP_
