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

#ifndef NLPOT_SRC_MEASURE_NODE_HPP_
#define NLPOT_SRC_MEASURE_NODE_HPP_

#include <memory>
#include <vector>

#include "nlpot/measure.hpp"

namespace nlpot {

// Region constraint attached to a radial density by Restrict.
struct ShellClip {
  bool is_ball = true;
  Point center;  // ball
  double radius = 0.0;
  Point lo, hi;  // box
};

struct ShellWeight {
  std::shared_ptr<const PointFunction> f;
  double power = 1.0;
};

struct Measure::Node {
  int dim = 0;
  MeasureKind kind = MeasureKind::kAtomic;
  std::vector<Atom> atoms;
  RadialDensitySpec radial;
  std::vector<ShellClip> clips;
  std::vector<ShellWeight> weights;
  DyadicDensitySpec dyadic;
  std::vector<BoxPiece> pieces;
  std::vector<Measure> parts;
  double total_mass = 0.0;
};

// sigma(B(x, r)) for a radial density with clips and weights, by integration
// over spheres about the density centre.  Supports n = 1, 2 and 3.
double ShellBallMass(const Measure::Node& node, const Point& x, double r);

// Mass of the plain radial density inside B(x, r).
double PlainRadialBallMass(const RadialDensitySpec& spec, int n,
                           const Point& x, double r);

}  // namespace nlpot

#endif  // NLPOT_SRC_MEASURE_NODE_HPP_
