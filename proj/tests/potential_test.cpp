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

#include "nlpot/potential.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"

namespace nlpot {
namespace {

constexpr double kPi = std::numbers::pi;

const Exponents kLaplace3(3, 1.0, 2.0);

std::vector<Atom> RandomAtoms(std::mt19937_64& rng, int count) {
  std::vector<Atom> atoms;
  for (int i = 0; i < count; ++i) {
    atoms.push_back({oracle::RandomPoint(rng, 3, 1.5), oracle::Uniform(rng, 0.05, 2)});
  }
  return atoms;
}

TEST(Wolff, SingleAtomMatchesFundamentalSolution) {
  const Measure m = Measure::Atomic(3, {{{0, 0, 0}, 1.0}});
  // (p - 1)/(n - p) |x - x0|^{(p - n)/(p - 1)} with p = 2, n = 3.
  EXPECT_NEAR(Wolff(m, kLaplace3, {2, 0, 0}), 0.5, 1e-14);
  EXPECT_EQ(Wolff(m, kLaplace3, {2, 0, 0}, 1.0), 0.0);
  EXPECT_TRUE(std::isinf(Wolff(m, kLaplace3, {0, 0, 0})));
}

TEST(Wolff, HardyDivergesAtCenter) {
  const Measure hardy = Measure::Radial({{0, 0, 0}, -2.0, 1.0, kInf});
  for (double rho : {1e-3, 1.0, kInf}) {
    EXPECT_TRUE(std::isinf(Wolff(hardy, kLaplace3, {0, 0, 0}, rho)));
  }
}

TEST(Riesz, SingleAtom) {
  const Measure m = Measure::Atomic(3, {{{0, 0, 0}, 1.0}});
  EXPECT_NEAR(Riesz(m, 2.0, {0, 2, 0}), 0.5, 1e-14);
  // Off the support the potential vanishes as rho -> 0.
  EXPECT_EQ(Riesz(m, 2.0, {0, 2, 0}, 1e-6), 0.0);
}

TEST(Riesz, UnitBallLebesgueAtCenter) {
  const Measure m = Measure::Radial({{0, 0, 0}, 0.0, 1.0, 1.0});
  // Oracle: int_0^1 (4 pi / 3) r^3 / r * dr / r.
  const double oracle = oracle::Simpson([](double r) { return 4 * kPi / 3 * r; }, 0, 1, 200);
  EXPECT_NEAR(oracle, 2 * kPi / 3, 1e-12);
  EXPECT_NEAR(Riesz(m, 2.0, {0, 0, 0}, 1.0), oracle, 1e-8 * oracle);
}

TEST(Riesz, OffSupportLimitIsZero) {
  const Measure m = Measure::Radial({{0, 0, 0}, -1.0, 1.0, 1.0});
  double prev = kInf;
  for (double rho : {0.5, 0.1, 0.01}) {
    const double v = Riesz(m, 1.5, {0, 0, 3}, rho);
    EXPECT_LE(v, prev);
    prev = v;
  }
  EXPECT_EQ(prev, 0.0);
}

TEST(Evaluate, DispatchesOnKind) {
  const Measure m = Measure::Atomic(3, {{{0, 0, 0}, 1.0}});
  PotentialQuery q{kLaplace3, {2, 0, 0}, kInf, PotentialKind::kWolff};
  EXPECT_NEAR(Evaluate(m, q), 0.5, 1e-14);
  q.kind = PotentialKind::kRiesz;
  // Order alpha = 1: |x|^{alpha - n} / (n - alpha) = 2^{-2} / 2.
  EXPECT_NEAR(Evaluate(m, q), 0.125, 1e-14);
}

TEST(TailGap, IdenticalPointsGiveZero) {
  const Measure m = Measure::Radial({{0, 0, 0}, 0.0, 1.0, 1.0});
  EXPECT_EQ(WolffTailGap(m, {0.2, 0, 0}, {0.2, 0, 0}, 0.5, kLaplace3), 0.0);
}

TEST(TailGap, AtomicAgainstLogGrid) {
  const std::vector<Atom> atoms{{{0, 0, 0}, 1.0}};
  const Measure m = Measure::Atomic(3, atoms);
  const Point x{3, 0, 0}, y{3.5, 0.2, 0};
  const double t = 1.0;
  const double gap = WolffTailGap(m, x, y, t, kLaplace3);
  // Oracle: the full potentials minus the parts below t.
  const double ox = oracle::AtomicLogGrid(atoms, x, kInf, 1.0, 1.0) -
                    oracle::AtomicLogGrid(atoms, x, t, 1.0, 1.0);
  const double oy = oracle::AtomicLogGrid(atoms, y, kInf, 1.0, 1.0) -
                    oracle::AtomicLogGrid(atoms, y, t, 1.0, 1.0);
  EXPECT_TRUE(std::isfinite(gap));
  EXPECT_NEAR(gap, ox - oy, 1e-9);
}

TEST(TailGap, SaturatedBallsCancel) {
  const Measure m = Measure::Radial({{0, 0, 0}, -1.0, 1.0, 0.5});
  EXPECT_LT(std::abs(WolffTailGap(m, {0.1, 0, 0}, {0, 0.2, 0}, 2.0, kLaplace3)), 1e-9);
}

// Closed-form step sums agree with log-grid quadrature on random atoms.
TEST(Properties, ClosedFormMatchesLogGrid) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    const auto atoms = RandomAtoms(rng, 1 + trial % 6);
    const Measure m = Measure::Atomic(3, atoms);
    const double s = oracle::Uniform(rng, 1.2, 3.5);
    const double alpha = oracle::Uniform(rng, 0.1, 0.95) * 3 / s;
    const Exponents e(3, alpha, s);
    const Point x = oracle::RandomPoint(rng, 3, 2.5);
    const double rho = trial % 3 == 0 ? kInf : oracle::Uniform(rng, 0.3, 4);
    const double w = Wolff(m, e, x, rho);
    const double o = oracle::AtomicLogGrid(atoms, x, rho, e.codim(), e.wolff_power());
    EXPECT_NEAR(w, o, 1e-6 * o) << "trial " << trial;
    const double r = Riesz(m, alpha, x, rho);
    const double orz = oracle::AtomicLogGrid(atoms, x, rho, 3 - alpha, 1.0);
    EXPECT_NEAR(r, orz, 1e-6 * orz) << "trial " << trial;
  }
}

TEST(Properties, GlobalRieszIsKernelSum) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const auto atoms = RandomAtoms(rng, 4);
    const double alpha = oracle::Uniform(rng, 0.2, 2.8);
    const Point x = oracle::RandomPoint(rng, 3, 2);
    double sum = 0;
    for (const auto& a : atoms) {
      sum += a.mass * std::pow(Distance(x, a.x), alpha - 3) / (3 - alpha);
    }
    EXPECT_NEAR(Riesz(Measure::Atomic(3, atoms), alpha, x), sum, 1e-12 * sum);
  }
}

TEST(Properties, ScalingLaw) {
  std::mt19937_64 rng(7);
  const std::vector<Measure> bases = {
      Measure::Atomic(3, RandomAtoms(rng, 3)),
      Measure::Radial({{0, 0, 0}, -1.0, 1.0, 1.0}),
      Measure::Boxes(3, {{{0, 0, 0}, {1, 0.5, 0.5}, 1.0}})};
  for (int trial = 0; trial < 30; ++trial) {
    const Measure& m = bases[trial % bases.size()];
    const double s = oracle::Uniform(rng, 1.3, 3);
    const Exponents e(3, oracle::Uniform(rng, 0.2, 0.9) * 3 / s, s);
    const double lambda = oracle::Uniform(rng, 0.05, 20);
    const Point x = oracle::RandomPoint(rng, 3, 2);
    const double base = Wolff(m, e, x, 2.0);
    EXPECT_NEAR(Wolff(Scale(m, lambda), e, x, 2.0),
                std::pow(lambda, 1 / (s - 1)) * base,
                1e-8 * std::pow(lambda, 1 / (s - 1)) * base)
        << m.Describe();
  }
}

TEST(Properties, TranslationInvariance) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const Measure m = trial % 2 ? Measure::Atomic(3, RandomAtoms(rng, 3))
                                : Measure::Radial({{0, 0, 0}, -1.5, 1.0, 1.0});
    const Point shift = oracle::RandomPoint(rng, 3, 4);
    const Point x = oracle::RandomPoint(rng, 3, 2);
    const double a = Wolff(m, kLaplace3, x, 1.5);
    const double b = Wolff(Translate(m, shift), kLaplace3, Add(x, shift), 1.5);
    EXPECT_NEAR(a, b, 1e-12 * (1 + a)) << m.Describe();
  }
}

TEST(Properties, MonotoneInRho) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const Measure m = trial % 2 ? Measure::Atomic(3, RandomAtoms(rng, 4))
                                : Measure::Radial({{0.1, 0, 0}, -1.0, 2.0, 1.2});
    const Point x = oracle::RandomPoint(rng, 3, 2);
    double w_prev = 0, r_prev = 0;
    for (double rho = 0.1; rho < 20; rho *= 2) {
      const double w = Wolff(m, kLaplace3, x, rho);
      const double r = Riesz(m, 1.5, x, rho);
      EXPECT_GE(w, w_prev * (1 - 1e-12));
      EXPECT_GE(r, r_prev * (1 - 1e-12));
      w_prev = w;
      r_prev = r;
    }
  }
}

TEST(Properties, MonotoneInMeasure) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 30; ++trial) {
    auto small = RandomAtoms(rng, 5);
    auto big = small;
    for (auto& a : big) a.mass += oracle::Uniform(rng, 0, 1);
    big.push_back({oracle::RandomPoint(rng, 3, 1.5), 0.5});
    const Point x = oracle::RandomPoint(rng, 3, 3);
    const double rho = oracle::Uniform(rng, 0.5, 5);
    EXPECT_LE(Wolff(Measure::Atomic(3, small), kLaplace3, x, rho),
              Wolff(Measure::Atomic(3, big), kLaplace3, x, rho));
    EXPECT_LE(Riesz(Measure::Atomic(3, small), 1.0, x, rho),
              Riesz(Measure::Atomic(3, big), 1.0, x, rho));
  }
}

// (W^{2^k})^{s-1} against the Riesz potential of order alpha s: the ratio is
// bounded for s < 2, and the reverse ratio is bounded for s > 2.
TEST(Properties, WolffRieszComparison) {
  std::mt19937_64 rng(37);
  const Measure m = Measure::Atomic(3, RandomAtoms(rng, 6));
  for (double s : {1.5, 2.5}) {
    const Exponents e(3, 0.8, s);
    double sup = 0;
    for (int trial = 0; trial < 50; ++trial) {
      const Point x = oracle::RandomPoint(rng, 3, 2);
      for (int k = -3; k <= 3; ++k) {
        const double rho = std::ldexp(1.0, k);
        const double w = std::pow(Wolff(m, e, x, rho), s - 1);
        const double i = Riesz(m, e.alpha() * s, x, rho);
        if (w == 0 && i == 0) continue;
        sup = std::max(sup, s < 2 ? w / i : i / w);
      }
    }
    EXPECT_TRUE(std::isfinite(sup)) << "s=" << s;
    EXPECT_GT(sup, 0);
    RecordProperty(s < 2 ? "C_s1.5" : "C_s2.5", std::to_string(sup));
  }
}

}  // namespace
}  // namespace nlpot
