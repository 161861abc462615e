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

#include "nlpot/dyadic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <tuple>

#include <gtest/gtest.h>

#include "nlpot/potential.hpp"
#include "oracles.hpp"

namespace nlpot {
namespace {

const Exponents kLaplace3(3, 1.0, 2.0);

Measure UnitCubeLebesgue() {
  return Measure::Dyadic({3, 0, {}, {{{0, 0, 0}, 1.0}}});
}

const PointFunction kOne = [](const Point&) { return 1.0; };

// Brute-force discrete Wolff potential of an atomic measure: every level
// from -40 to 40, cube membership by floor division.  Lattice cubes never
// straddle the coordinate hyperplanes through the shift, so above level 40
// the mass of the cube holding x is frozen and the rest is a geometric series.
double BruteDiscreteWolff(const std::vector<Atom>& atoms, const Point& x,
                          const Point& shift, const Exponents& e) {
  const int n = e.n();
  double total = 0;
  for (int k = -40; k <= 40; ++k) {
    const double side = std::ldexp(1.0, k);
    std::vector<double> home(n);
    for (int j = 0; j < n; ++j) home[j] = std::floor((x[j] - shift[j]) / side);
    double mass = 0;
    for (const auto& a : atoms) {
      bool inside = true;
      for (int j = 0; j < n; ++j) {
        inside = inside && std::floor((a.x[j] - shift[j]) / side) == home[j];
      }
      if (inside) mass += a.mass;
    }
    total += std::pow(side, e.kernel_exp()) * std::pow(mass, e.wolff_power());
    if (k == 40) {
      const double q = std::pow(2.0, e.kernel_exp());
      total += std::pow(mass, e.wolff_power()) * std::pow(side, e.kernel_exp()) * q / (1 - q);
    }
  }
  return total;
}

TEST(Cube, ParentAndChildrenAreConsistent) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    const Point shift = oracle::RandomPoint(rng, 3, 1);
    const Point x = oracle::RandomPoint(rng, 3, 5);
    const int level = static_cast<int>(rng() % 9) - 4;
    const DyadicCube q = CubeContaining(x, level, shift);
    EXPECT_TRUE(q.Contains(x));
    EXPECT_TRUE(q.Parent().Contains(x));
    EXPECT_EQ(q.Parent().level, level + 1);
    const auto kids = q.Children();
    ASSERT_EQ(kids.size(), 8u);
    int holders = 0;
    double volume = 0;
    for (const auto& c : kids) {
      EXPECT_EQ(c.level, level - 1);
      EXPECT_EQ(c.Parent(), q);
      holders += c.Contains(x) ? 1 : 0;
      volume += BoxVolume(c.lo(), c.hi());
    }
    EXPECT_EQ(holders, 1);
    EXPECT_NEAR(volume, BoxVolume(q.lo(), q.hi()), 1e-12 * volume);
  }
}

TEST(DiscreteWolff, FarFromSupportMatchesEnumeration) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Atom> atoms;
    for (int i = 0; i < 4; ++i) {
      atoms.push_back({oracle::RandomPoint(rng, 3, 1), oracle::Uniform(rng, 0.1, 1)});
    }
    const double s = oracle::Uniform(rng, 1.4, 3);
    const Exponents e(3, 0.7 * 3 / s, s);
    const Point x = Add(oracle::RandomPoint(rng, 3, 1), Point{3, 0, 0});
    const Point shift = oracle::RandomPoint(rng, 3, 0.5);
    const double brute = BruteDiscreteWolff(atoms, x, shift, e);
    EXPECT_NEAR(DiscreteWolff(Measure::Atomic(3, atoms), kOne, x, shift, e), brute,
                1e-9 * brute);
  }
}

TEST(DiscreteWolff, AtomAndZeroWeight) {
  const Measure m = Measure::Atomic(3, {{{0.3, 0.3, 0.3}, 1.0}});
  EXPECT_TRUE(std::isinf(DiscreteWolff(m, kOne, {0.3, 0.3, 0.3}, {0, 0, 0}, kLaplace3)));
  EXPECT_EQ(DiscreteWolff(m, [](const Point&) { return 0.0; }, {1, 2, 0}, {0, 0, 0},
                          kLaplace3),
            0.0);
}

TEST(Carleson, AtomicIsInfiniteWithWitness) {
  const Measure m = Measure::Atomic(3, {{{0, 0, 0}, 1.0}});
  const CarlesonReport r = CarlesonAudit(m, kLaplace3, {{0, 0, 0}});
  EXPECT_TRUE(std::isinf(r.sup_ratio));
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_TRUE(r.witness->Contains({0, 0, 0}));
}

TEST(Carleson, ZeroMeasure) {
  EXPECT_EQ(CarlesonAudit(Measure::Zero(3), kLaplace3, {{0, 0, 0}}).sup_ratio, 0.0);
}

TEST(Carleson, UnitCubeLebesgueMatchesEnumeration) {
  const CarlesonReport r = CarlesonAudit(UnitCubeLebesgue(), kLaplace3, {{0, 0, 0}});
  ASSERT_FALSE(r.rows.empty());
  EXPECT_TRUE(std::isfinite(r.sup_ratio));
  double row_sup = 0;
  for (const auto& row : r.rows) {
    const double o = oracle::UnitCubeCarleson(3, 1.0, 2.0, row.level, row.index, 40);
    EXPECT_NEAR(row.ratio, o, 1e-8 * o) << "level " << row.level;
    row_sup = std::max(row_sup, row.ratio);
  }
  EXPECT_GE(r.sup_ratio, row_sup);
  // The ancestors of [0, 1)^3 hold the whole mass and approach the supremum.
  const double limit = oracle::UnitCubeCarleson(3, 1.0, 2.0, 0, {0, 0, 0}, 40, 45);
  EXPECT_NEAR(r.sup_ratio, limit, 1e-8 * limit);
}

// Remark-style monotonicity: restricting to a union of dyadic subcubes does
// not raise the ratio of any commonly scanned cube.
TEST(Carleson, RestrictionDoesNotIncreaseRatios) {
  const Measure m = UnitCubeLebesgue();
  const RegionSpec e = MakeUnion({MakeCube({0, 0, 0}, -1), MakeCube({1, 1, 0}, -1)}, true);
  const LevelRange levels{-3, 2};
  const CarlesonReport full = CarlesonAudit(m, kLaplace3, {{0, 0, 0}}, levels);
  const CarlesonReport part = CarlesonAudit(Restrict(m, e), kLaplace3, {{0, 0, 0}}, levels);
  std::map<std::tuple<int, CellIndex, int>, double> by_cube;
  for (const auto& row : full.rows) by_cube[{row.level, row.index, row.shift_id}] = row.ratio;
  int compared = 0;
  for (const auto& row : part.rows) {
    const auto it = by_cube.find({row.level, row.index, row.shift_id});
    if (it == by_cube.end()) continue;
    EXPECT_LE(row.ratio, it->second * (1 + 1e-9)) << "level " << row.level;
    ++compared;
  }
  EXPECT_GT(compared, 0);
  EXPECT_LE(part.sup_ratio, full.sup_ratio * (1 + 1e-9));
}

TEST(Carleson, CsvHasOneRowPerCube) {
  const CarlesonReport r =
      CarlesonAudit(UnitCubeLebesgue(), kLaplace3, {{0, 0, 0}}, LevelRange{-1, 0});
  const std::string csv = CarlesonCsv(r);
  EXPECT_EQ(csv.rfind("level,index,shift_id,ratio\n", 0), 0u);
  EXPECT_EQ(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')),
            r.rows.size() + 2);
}

TEST(ShiftAverage, ZeroWeight) {
  const Measure m = Measure::Atomic(3, {{{0, 0, 0}, 1.0}});
  const ShiftAverage a = ShiftAverageCheck(m, [](const Point&) { return 0.0; },
                                           {1, 0, 0}, 3, 100, kLaplace3, 4);
  EXPECT_EQ(a.lhs, 0.0);
  EXPECT_EQ(a.avg, 0.0);
}

TEST(ShiftAverage, AtomBothSidesFiniteAndHomogeneous) {
  const Measure m = Measure::Atomic(3, {{{0, 0, 0}, 1.0}});
  const ShiftAverage a = ShiftAverageCheck(m, kOne, {1, 0, 0}, 3, 1000, kLaplace3, 11);
  ASSERT_TRUE(std::isfinite(a.lhs));
  ASSERT_TRUE(std::isfinite(a.avg));
  EXPECT_GT(a.avg, 0);
  EXPECT_EQ(a.seed, 11u);
  RecordProperty("lhs_over_avg", std::to_string(a.lhs / a.avg));
  // Exact W^8 of a unit atom at distance 1: int_1^8 r^{-1} dr/r = 7/8.
  EXPECT_NEAR(a.lhs, 7.0 / 8.0, 1e-12);
  const double lambda = 3.7;
  const ShiftAverage b =
      ShiftAverageCheck(Scale(m, lambda), kOne, {1, 0, 0}, 3, 1000, kLaplace3, 11);
  EXPECT_NEAR(b.lhs, lambda * a.lhs, 1e-12 * b.lhs);
  EXPECT_NEAR(b.avg, lambda * a.avg, 1e-12 * b.avg);
}

// discrete Wolff <= C Wolff with an empirical C that barely moves between
// shifts.
TEST(Properties, DiscreteWolffBoundedByWolff) {
  const Measure m = Discretize(Measure::Radial({{0, 0, 0}, 0.0, 1.0, 1.0}), -2, {0, 0, 0});
  std::mt19937_64 rng(41);
  std::vector<Point> probes;
  std::vector<double> wolff;
  for (int i = 0; i < 20; ++i) {
    probes.push_back(oracle::RandomPoint(rng, 3, 1.5));
    wolff.push_back(Wolff(m, kLaplace3, probes.back()));
  }
  std::vector<double> sups;
  for (int t = 0; t < 3; ++t) {
    const Point shift = oracle::RandomPoint(rng, 3, 1);
    double sup = 0;
    for (std::size_t i = 0; i < probes.size(); ++i) {
      sup = std::max(sup, DiscreteWolff(m, kOne, probes[i], shift, kLaplace3) / wolff[i]);
    }
    EXPECT_TRUE(std::isfinite(sup));
    sups.push_back(sup);
  }
  const auto [lo, hi] = std::minmax_element(sups.begin(), sups.end());
  EXPECT_LE(*hi / *lo, 2.0);
}

}  // namespace
}  // namespace nlpot
