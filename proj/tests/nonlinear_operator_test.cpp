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

#include "nlpot/nonlinear_operator.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

#include "nlpot/potential.hpp"
#include "oracles.hpp"

namespace nlpot {
namespace {

const Exponents kLaplace3(3, 1.0, 2.0);
const Point kOrigin{0, 0, 0};
const Point kE1{1, 0, 0};

FieldFunction Constant(double c) {
  return FieldFunction::Supersolution([c](const Point&) { return c; });
}

std::vector<Atom> RandomAtoms(std::mt19937_64& rng, int count) {
  std::vector<Atom> atoms;
  for (int i = 0; i < count; ++i) {
    atoms.push_back({oracle::RandomPoint(rng, 3, 1.5), oracle::Uniform(rng, 0.05, 2)});
  }
  return atoms;
}

// A random positive field: a + b |x - c|^2.
FieldFunction RandomField(std::mt19937_64& rng) {
  const double a = oracle::Uniform(rng, 0.1, 2), b = oracle::Uniform(rng, 0, 1);
  const Point c = oracle::RandomPoint(rng, 3, 1);
  return FieldFunction::Supersolution([=](const Point& x) {
    const double d = Distance(x, c);
    return a + b * d * d;
  });
}

TEST(Field, KernelAndTabulated) {
  const FieldFunction k = FieldFunction::Kernel(kOrigin, -1.0);
  EXPECT_DOUBLE_EQ(k({0, 2, 0}), 0.5);
  EXPECT_TRUE(std::isinf(k(kOrigin)));
  const FieldFunction t = FieldFunction::Tabulated({kE1}, {3.0});
  EXPECT_EQ(t(kE1), 3.0);
  EXPECT_THROW(t(kOrigin), std::out_of_range);
}

TEST(ApplyN, ZeroField) {
  const Measure m = Measure::Radial({kOrigin, 0.0, 1.0, 1.0});
  EXPECT_EQ(ApplyN(m, Constant(0.0), {2, 0, 0}, kLaplace3), 0.0);
}

TEST(ApplyN, AtomicComposition) {
  // f0(e1) W(delta_{e1})(2 e1) = 1 * 1.
  const Measure m = Measure::Atomic(3, {{kE1, 1.0}});
  const FieldFunction f0 = FieldFunction::Kernel(kOrigin, kLaplace3.kernel_exp());
  EXPECT_NEAR(ApplyN(m, f0, {2, 0, 0}, kLaplace3), 1.0, 1e-14);
  const Measure at_pole = Measure::Atomic(3, {{kOrigin, 1.0}});
  EXPECT_TRUE(std::isinf(ApplyN(at_pole, f0, {2, 0, 0}, kLaplace3)));
}

TEST(ApplyN, DoublingTheField) {
  const Measure m = Measure::Boxes(3, {{{-1, -1, -1}, {1, 1, 1}, 2.0}});
  const FieldFunction f = FieldFunction::Kernel({3, 0, 0}, -1.0);
  const FieldFunction g = FieldFunction::Supersolution(
      [&](const Point& x) { return 2 * f(x); });
  const double nf = ApplyN(m, f, {0.5, 0.5, 0}, kLaplace3);
  EXPECT_NEAR(ApplyN(m, g, {0.5, 0.5, 0}, kLaplace3), 2 * nf, 1e-8 * nf);
}

TEST(IterateN, ZeroMeasure) {
  const SampleSet samples = MakeSampleSet(Measure::Zero(3), kOrigin, 1);
  const IterationLedger l = IterateN(Measure::Zero(3), 3, kLaplace3, samples);
  ASSERT_EQ(static_cast<int>(l.values.size()), samples.size());
  for (double v : l.values) EXPECT_EQ(v, 0.0);
  EXPECT_TRUE(l.monotone);
  EXPECT_FALSE(l.diverged_at.has_value());
}

TEST(IterateN, FirstIterateIsApplyN) {
  std::mt19937_64 rng(3);
  const Measure m = Measure::Atomic(3, RandomAtoms(rng, 4));
  const SampleSet samples = MakeSampleSet(m, {3, 3, 3}, 2, {3, 4, 1e-2, 1e2});
  const IterationLedger l = IterateN(m, 1, kLaplace3, samples);
  const FieldFunction f0 = FieldFunction::Kernel({3, 3, 3}, kLaplace3.kernel_exp());
  for (int i = 0; i < samples.size(); ++i) {
    const double direct = ApplyN(m, f0, samples.points[i], kLaplace3);
    if (std::isinf(direct)) {
      EXPECT_TRUE(std::isinf(l.values[i]));
    } else {
      EXPECT_NEAR(l.values[i], direct, 1e-12 * direct);
    }
  }
}

TEST(IterateN, AtomicSecondIterateDiverges) {
  // N(f0) = f0(e1) / |. - e1| is infinite at the atom, so N^2(f0) is +inf.
  const Measure m = Measure::Atomic(3, {{kE1, 1.0}});
  SampleSet samples = MakeSampleSet(m, kOrigin, 1, {2, 2, 1.0, 2.0});
  samples.points.push_back({2, 0, 0});
  samples.radii.push_back(2);
  samples.shell.push_back(-2);
  const IterationLedger l = IterateN(m, 2, kLaplace3, samples);
  ASSERT_EQ(l.history.size(), 2u);
  EXPECT_NEAR(l.history[0].back(), 1.0, 1e-14);
  EXPECT_TRUE(std::isinf(l.values.back()));
  ASSERT_TRUE(l.diverged_at.has_value());
}

TEST(LowerBounds, ZeroMeasure) {
  const Measure zero = Measure::Zero(3);
  for (int m = 1; m <= 3; ++m) {
    EXPECT_EQ(LowerBoundShell(zero, m, {2, 0, 0}, kOrigin, kLaplace3), 0.0);
    EXPECT_EQ(LowerBoundRadial(zero, m, {2, 0, 0}, kOrigin, kLaplace3), 0.0);
  }
  EXPECT_THROW(LowerBoundShell(zero, 0, {2, 0, 0}, kOrigin, kLaplace3), std::invalid_argument);
}

TEST(LowerBounds, RadialVanishesWhenHalfBallMissesSupport) {
  const Measure m = Measure::Radial({kOrigin, 0.0, 1.0, 1.0});
  // |x - x0| = 2, B(x, 1) misses the unit ball.
  EXPECT_EQ(LowerBoundRadial(m, 2, {2.5, 0, 0}, {0.5, 0, 0}, kLaplace3), 0.0);
}

TEST(TheoremBound, ZeroMeasureIsTheKernel) {
  const Measure zero = Measure::Zero(3);
  const Exponents e(3, 0.8, 2.5);
  const double a = TheoremLowerBound(zero, {0.7, 0.2, 0}, kOrigin, e, 1.0, 3.0);
  EXPECT_NEAR(a, std::pow(Norm(Point{0.7, 0.2, 0}), e.kernel_exp()), 1e-15);
  const double b = TheoremLowerBound(zero, {1.4, 0.4, 0}, kOrigin, e, 1.0, 3.0);
  EXPECT_NEAR(b / a, std::pow(2.0, e.kernel_exp()), 1e-14);
}

TEST(TheoremBound, HardyAgainstShellOracle) {
  const Measure hardy = Measure::Radial({kOrigin, -2.0, 1.0, kInf});
  const Point x{1, 1, 0};
  const double d = 1.0;  // |x - e1|
  const double c1 = 0.7, c2 = 0.1;
  // W^d(x) = int_0^d sigma(B(x, r)) / r^2 dr and I^d_2(e1) likewise at e1.
  const double w = oracle::Simpson(
      [&](double r) { return r == 0 ? 0 : oracle::HardyBallMass3(1, std::sqrt(2.0), r) / (r * r); },
      0, d, 400);
  const double i = oracle::Simpson(
      [&](double r) { return r == 0 ? 0 : oracle::HardyBallMass3(1, 1, r) / (r * r); }, 0, d,
      400);
  const double value = TheoremLowerBound(hardy, x, kE1, kLaplace3, c1, c2);
  ASSERT_TRUE(std::isfinite(value));
  EXPECT_NEAR(value, c1 * std::pow(d, -1.0) * std::exp(c2 * (w + i)), 1e-6 * value);
}

TEST(Params, HessianAndPlaplace) {
  EXPECT_DOUBLE_EQ(HessianParams(1, 3).kernel_exp(), -1.0);
  EXPECT_NEAR(PlaplaceGamma(2.0, 3), 1.0 / (12 * std::numbers::pi), 1e-16);
  EXPECT_THROW(PlaplaceParams(3.0, 3), std::invalid_argument);
}

TEST(Properties, Homogeneity) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 200; ++trial) {
    const Measure m = Measure::Atomic(3, RandomAtoms(rng, 1 + trial % 5));
    const double s = oracle::Uniform(rng, 1.2, 3.5);
    const Exponents e(3, oracle::Uniform(rng, 0.1, 0.9) * 3 / s, s);
    const FieldFunction f = RandomField(rng);
    const double c = oracle::Uniform(rng, 0.1, 10);
    const FieldFunction cf = FieldFunction::Supersolution([&](const Point& x) { return c * f(x); });
    const Point x = oracle::RandomPoint(rng, 3, 3);
    const double base = ApplyN(m, f, x, e);
    EXPECT_NEAR(ApplyN(m, cf, x, e), c * base, 1e-10 * c * base) << "trial " << trial;
  }
}

TEST(Properties, MonotoneInField) {
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 100; ++trial) {
    const Measure m = Measure::Atomic(3, RandomAtoms(rng, 4));
    const FieldFunction f = RandomField(rng);
    const FieldFunction bump = RandomField(rng);
    const FieldFunction g =
        FieldFunction::Supersolution([&](const Point& x) { return f(x) + bump(x); });
    const Point x = oracle::RandomPoint(rng, 3, 3);
    EXPECT_LE(ApplyN(m, f, x, kLaplace3), ApplyN(m, g, x, kLaplace3));
  }
}

// N is superadditive for s <= 2; for s > 2 the operator
// T(f) = N(f^{1/(s-1)})^{s-1} is.
TEST(Properties, Superadditivity) {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 100; ++trial) {
    const Measure m = Measure::Atomic(3, RandomAtoms(rng, 5));
    const double s = trial % 2 ? oracle::Uniform(rng, 1.1, 2.0) : oracle::Uniform(rng, 2.0, 4.0);
    const Exponents e(3, 0.6 * 3 / s, s);
    const FieldFunction f = RandomField(rng), g = RandomField(rng);
    const Point x = oracle::RandomPoint(rng, 3, 3);
    const auto sum = FieldFunction::Supersolution([&](const Point& y) { return f(y) + g(y); });
    if (s <= 2) {
      const double lhs = ApplyN(m, sum, x, e);
      EXPECT_GE(lhs, (ApplyN(m, f, x, e) + ApplyN(m, g, x, e)) * (1 - 1e-12));
    } else {
      const double q = 1 / (s - 1);
      const auto T = [&](const FieldFunction& h) {
        const auto root = FieldFunction::Supersolution([&](const Point& y) { return std::pow(h(y), q); });
        return std::pow(ApplyN(m, root, x, e), s - 1);
      };
      EXPECT_GE(T(sum), (T(f) + T(g)) * (1 - 1e-12)) << "s=" << s;
    }
  }
}

// Iterates dominate the shell and radial lower bounds, evaluated from the
// same discretised measure the iterates see.
TEST(Properties, IteratesDominateLowerBounds) {
  const Measure ball = Measure::Radial({kOrigin, 0.0, 1.0, 1.0});
  std::vector<Point> probes;
  for (double r : {0.3, 0.7, 1.0, 1.6}) {
    probes.push_back({r, 0, 0});
    probes.push_back({0, r * 0.6, r * 0.8});
  }
  const OperatorGrid grid(ball, kLaplace3, kOrigin, probes);
  const double e = kLaplace3.codim(), p = kLaplace3.wolff_power();
  const IterationLedger l = IterateN(grid, 4);
  ASSERT_EQ(l.history.size(), 4u);
  for (std::size_t j = 0; j < probes.size(); ++j) {
    const int node = grid.extra_node(static_cast<int>(j));
    const double d = Norm(probes[j]);
    const double shell = ShellSum([&](double r) { return grid.BallMass(kOrigin, r); }, d, kLaplace3);
    const double half = std::pow(2.0, -e * p) * grid.Integrate(node, {}, d / 2, e, p);
    for (int m = 1; m <= 4; ++m) {
      const double u = l.history[m - 1][node];
      EXPECT_GE(u, ShellBoundFormula(m, d, shell, kLaplace3)) << "m=" << m << " d=" << d;
      EXPECT_GE(u, RadialBoundFormula(m, d, half, kLaplace3)) << "m=" << m << " d=" << d;
    }
  }
}

TEST(Properties, SeriesPartialSumsIncrease) {
  const Measure ball = Measure::Radial({kOrigin, 0.0, 0.5, 1.0});
  const OperatorGrid grid(ball, kLaplace3, kOrigin, {{0.5, 0, 0}, {2, 0, 0}});
  const IterationLedger l = IterateN(grid, 5);
  // The monotone flag reports exactly whether every node is nondecreasing.
  bool nondecreasing = true;
  for (std::size_t k = 1; k < l.history.size(); ++k) {
    for (std::size_t i = 0; i < l.history[k].size(); ++i) {
      nondecreasing = nondecreasing && l.history[k][i] >= l.history[k - 1][i] * (1 - 1e-12);
    }
  }
  EXPECT_EQ(l.monotone, nondecreasing);
  const double c = 0.3;
  for (int node : {grid.extra_node(0), grid.extra_node(1)}) {
    double partial = std::pow(Norm(grid.node(node)), kLaplace3.kernel_exp());
    double weight = 1;
    for (const auto& iterate : l.history) {
      weight *= c;
      const double next = partial + weight * iterate[node];
      EXPECT_GE(next, partial);
      partial = next;
    }
  }
}

}  // namespace
}  // namespace nlpot
