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

#ifndef NLPOT_MEASURE_HPP_
#define NLPOT_MEASURE_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "nlpot/geometry.hpp"

namespace nlpot {

using PointFunction = std::function<double(const Point&)>;
using CellIndex = std::vector<std::int64_t>;

struct Atom {
  Point x;
  double mass = 0.0;
};

// Density c |y - center|^exponent on the open ball B(center, cutoff).
struct RadialDensitySpec {
  Point center;
  double exponent = 0.0;
  double coefficient = 1.0;
  double cutoff = kInf;
};

// Piecewise uniform density on the cells [0, 2^level)^n + 2^level * index +
// origin.  `cells` maps a cell index to the total mass of that cell.
struct DyadicDensitySpec {
  int dim = 0;
  int level = 0;
  Point origin;  // empty means the zero vector
  std::map<CellIndex, double> cells;
};

struct BallRegion {
  Point center;
  double radius = 0.0;
};

// The half-open cube [0, 2^level)^n + 2^level * index + shift.
struct CubeRegion {
  CellIndex index;
  int level = 0;
  Point shift;  // empty means the zero vector
};

struct RegionSpec;

struct UnionRegion {
  std::vector<RegionSpec> members;
  bool disjoint = false;
};

struct RegionSpec {
  std::variant<BallRegion, CubeRegion, UnionRegion> shape;
};

RegionSpec MakeBall(Point center, double radius);
RegionSpec MakeCube(CellIndex index, int level, Point shift = {});
RegionSpec MakeUnion(std::vector<RegionSpec> members, bool disjoint);

bool RegionContains(const RegionSpec& region, const Point& x);

// Lower and upper corners of a cube region.
void CubeCorners(const CubeRegion& cube, Point& lo, Point& hi);

// Uniform box piece of a piecewise constant density.
struct BoxPiece {
  Point lo;
  Point hi;
  double mass = 0.0;
};

// Behaviour of r -> sigma(B(x, r)) as r -> 0.
struct LocalGrowth {
  double atom_mass = 0.0;  // mass carried by the point x itself
  // Exponent e with sigma(B(x, r)) ~ r^e once atoms are removed; NaN when it
  // has to be estimated numerically.
  double exponent = 0.0;
};

enum class MeasureKind { kAtomic, kRadial, kDyadic, kBoxes, kSum };

// Immutable measure on R^n.  Copies share state.
class Measure {
 public:
  static Measure Zero(int dim);
  static Measure Atomic(int dim, std::vector<Atom> atoms);
  static Measure Radial(RadialDensitySpec spec);
  static Measure Dyadic(DyadicDensitySpec spec);
  static Measure Boxes(int dim, std::vector<BoxPiece> pieces);
  static Measure Sum(std::vector<Measure> parts);

  int dim() const;
  MeasureKind kind() const;
  bool is_zero() const;
  bool is_atomic() const { return kind() == MeasureKind::kAtomic; }

  // sigma(B(x, r)) for the open ball; r may be +inf.
  double BallMass(const Point& x, double r) const;
  double TotalMass() const;

  // Lower bound on dist(x, support) and upper bound on the distance from x to
  // the farthest support point (+inf for unbounded support).
  double NearestSupportDistance(const Point& x) const;
  double FarthestSupportDistance(const Point& x) const;

  // A ball containing the support: radius +inf when unbounded, and radius 0
  // with an empty center for the zero measure.
  BallRegion SupportBall() const;

  LocalGrowth Growth(const Point& x) const;

  // Points where potentials may blow up: atoms and radial singularities.
  std::vector<Point> SingularPoints() const;

  // Variant accessors; each throws std::logic_error on the wrong kind.
  const std::vector<Atom>& atoms() const;
  const RadialDensitySpec& radial() const;
  const DyadicDensitySpec& dyadic() const;
  const std::vector<Measure>& parts() const;
  bool radial_is_plain() const;  // no clips and no weights

  // Piecewise uniform boxes for Dyadic and Boxes measures.
  const std::vector<BoxPiece>& pieces() const;

  // Description such as "Atomic(3 atoms)" for diagnostics.
  std::string Describe() const;

  struct Node;
  explicit Measure(std::shared_ptr<const Node> node);
  const Node& node() const { return *node_; }

 private:
  std::shared_ptr<const Node> node_;
};

double BallMass(const Measure& measure, const Point& center, double radius);

// chi_E d sigma.
Measure Restrict(const Measure& measure, const RegionSpec& region);

// f^power d sigma.  Atomic masses are reweighted exactly; dyadic and box
// pieces take the value of f at their centres; radial densities keep f as a
// factor inside later integrations.
Measure Reweight(const Measure& measure, const PointFunction& f, double power);

Measure Scale(const Measure& measure, double lambda);
Measure Translate(const Measure& measure, const Point& shift);

// Dyadic density with the exact cell masses of `measure` on cells of side
// 2^level anchored at `origin`.  Accepts plain radial densities with finite
// cutoff, dyadic and box measures.
Measure Discretize(const Measure& measure, int level, const Point& origin);

// The function r -> sigma(B(center, r)).
struct BallMassProfile {
  Point center;
  bool is_step = false;
  // Step profiles: sigma(B(center, r)) = cumulative[k] for
  // breakpoints[k] < r <= breakpoints[k + 1], and 0 below breakpoints[0].
  std::vector<double> breakpoints;
  std::vector<double> cumulative;
  Measure measure;

  double operator()(double r) const;
};

BallMassProfile MakeProfile(const Measure& measure, const Point& center);

}  // namespace nlpot

#endif  // NLPOT_MEASURE_HPP_
