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

#ifndef NLPOT_DYADIC_HPP_
#define NLPOT_DYADIC_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nlpot/exponents.hpp"
#include "nlpot/measure.hpp"

namespace nlpot {

// The shifted dyadic cube [0, 2^level)^n + 2^level * index + shift.
struct DyadicCube {
  int level = 0;
  CellIndex index;
  Point shift;

  int dim() const { return static_cast<int>(index.size()); }
  double side() const;
  Point lo() const;
  Point hi() const;
  bool Contains(const Point& x) const;
  DyadicCube Parent() const;
  std::vector<DyadicCube> Children() const;
  RegionSpec Region() const;

  bool operator==(const DyadicCube& other) const = default;
};

DyadicCube CubeContaining(const Point& x, int level, const Point& shift);

// Orders cubes by (level, index), the tie-break used for witnesses.
bool LexLess(const DyadicCube& a, const DyadicCube& b);

// c_Q = side^{(alpha s - n)/(s - 1)}.
double CubeWeight(const Exponents& e, int level);

// Sum over the cubes Q containing x - shift of c_Q (int_{Q+shift} f dsigma)^{1/(s-1)}.
// Levels above the coarsest informative level and below the finest one are
// summed in closed form.  +inf when the sum diverges, e.g. at an atom.
double DiscreteWolff(const Measure& measure, const PointFunction& f,
                     const Point& x, const Point& shift,
                     const Exponents& exponents);

struct LevelRange {
  int finest = 0;
  int coarsest = 0;
};

struct CarlesonRow {
  int level = 0;
  CellIndex index;
  int shift_id = 0;
  double ratio = 0.0;
};

struct CarlesonReport {
  double sup_ratio = 0.0;
  std::optional<DyadicCube> witness;
  // The supremum is approached by the ancestors of the witness and is not
  // attained by a single cube.
  bool witness_is_limit = false;
  LevelRange levels;
  // Largest share of a scanned ratio that comes from the closed-form sum
  // over levels finer than levels.finest.
  double tail_bound = 0.0;
  std::vector<CarlesonRow> rows;
};

// sup over scanned cubes P and shifts t of
//   sum_{Q subset P} c_Q |Q + t|_sigma^{s'} / |P + t|_sigma.
// Atomic parts give +inf with a witness cube containing an atom; the zero
// measure gives 0.  Radial densities are audited through their dyadic
// discretisation at the finest level.  When `levels` is empty the range is
// derived from the support and the density resolution.
CarlesonReport CarlesonAudit(const Measure& measure, const Exponents& exponents,
                             const std::vector<Point>& shifts,
                             std::optional<LevelRange> levels = std::nullopt);

// CSV body for a Carleson report: "level,index,shift_id,ratio" rows followed
// by a summary line.
std::string CarlesonCsv(const CarlesonReport& report);

struct ShiftAverage {
  double lhs = 0.0;  // W^{2^j}(f dsigma)(x)
  double avg = 0.0;  // mean of the discrete Wolff potential over the shifts
  std::uint64_t seed = 0;
};

// Compares the truncated Wolff potential of f dsigma at x with the average
// of discrete Wolff potentials over `sample_shifts` low-discrepancy shifts
// in B(0, 2^{j + j0}).
ShiftAverage ShiftAverageCheck(const Measure& measure, const PointFunction& f,
                               const Point& x, int j, int sample_shifts,
                               const Exponents& exponents, std::uint64_t seed,
                               int j0 = 2);

}  // namespace nlpot

#endif  // NLPOT_DYADIC_HPP_
