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

#ifndef NLPOT_FIELD_HPP_
#define NLPOT_FIELD_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "nlpot/geometry.hpp"
#include "nlpot/measure.hpp"

namespace nlpot {

// Evaluation points around a pole: log-spaced shells times a fixed set of
// directions, followed by the atoms of the measure.
struct SampleSet {
  Point pole;
  std::uint64_t seed = 0;
  std::vector<Point> points;
  std::vector<double> radii;        // |points[i] - pole|
  std::vector<int> shell;           // shell number, -1 for atoms
  std::vector<double> shell_radii;  // increasing

  int size() const { return static_cast<int>(points.size()); }
  // Index of a point equal to x, or -1.
  int IndexOf(const Point& x) const;
};

struct SampleOptions {
  int shells = 8;
  int directions = 16;
  double inner = 1e-3;  // radii span [inner, outer] times the support scale
  double outer = 1e3;
};

// The support scale is the radius of Measure::SupportBall, or 1 for the zero
// measure and for unbounded support.  Atoms at the pole are skipped.
SampleSet MakeSampleSet(const Measure& measure, const Point& pole,
                        std::uint64_t seed, const SampleOptions& options = {});

enum class FieldKind { kKernel, kSupersolution, kTabulated };

// A nonnegative function on R^n with values in [0, +inf].
class FieldFunction {
 public:
  // |x - pole|^kernel_exp, +inf at the pole.
  static FieldFunction Kernel(Point pole, double kernel_exp);
  static FieldFunction Supersolution(PointFunction v);
  // Defined only at `points`; other arguments throw std::out_of_range.
  static FieldFunction Tabulated(const std::vector<Point>& points,
                                 const std::vector<double>& values);

  FieldKind kind() const { return kind_; }
  double operator()(const Point& x) const;
  PointFunction AsPointFunction() const;

 private:
  FieldKind kind_ = FieldKind::kKernel;
  Point pole_;
  double exponent_ = 0.0;
  PointFunction closure_;
  std::shared_ptr<const std::map<Point, double>> table_;
};

}  // namespace nlpot

#endif  // NLPOT_FIELD_HPP_
