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

#include "nlpot/solver.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include "oracles.hpp"

namespace nlpot {
namespace {

constexpr double kPi = std::numbers::pi;
const Exponents kLaplace3(3, 1.0, 2.0);
const Point kOrigin{0, 0, 0};
const SampleOptions kFewSamples{4, 4, 1e-2, 1e2};

Measure SmallBall(double mass = 0.1) {
  // Uniform density of total mass `mass` on the unit ball.
  return Measure::Radial({kOrigin, 0.0, mass / (4 * kPi / 3), 1.0});
}

TEST(Supersolution, ZeroMeasureIsTheKernel) {
  const Exponents e(3, 0.8, 2.5);
  SupersolutionSpec spec{1.0, 1.0, kOrigin, e, Measure::Zero(3)};
  const Point x{0.3, 1.1, -0.4};
  const double v = SupersolutionEval(spec, x);
  EXPECT_NEAR(v, std::pow(Norm(x), e.kernel_exp()), 1e-15);
  spec.beta = 2.0;
  EXPECT_EQ(SupersolutionEval(spec, x), v);
}

TEST(Supersolution, UnitBallAgainstDirectQuadrature) {
  const double beta = 0.01;
  const SupersolutionSpec spec{beta, 2.0, kOrigin, kLaplace3,
                               Measure::Radial({kOrigin, 0.0, 1.0, 1.0})};
  const Point x{0, 2, 0};
  // Shell sum at |x| = 2 (j_x = 1): sigma(B(0, 2^{l+1})) 2^{-l} over l <= 1.
  const double vol = 4 * kPi / 3;
  double shell = 0;
  for (int l = 1; l >= -60; --l) {
    const double r = std::ldexp(1.0, l + 1);
    shell += std::ldexp(1.0, -l) * vol * std::min(1.0, r * r * r);
  }
  EXPECT_NEAR(shell, vol * (0.5 + 1 + 8.0 / 3.0), 1e-12);
  // W^2 sigma(x) = int_1^2 |B(0,1) cap B(x,r)| / r^2 dr.
  const double w = oracle::Simpson(
      [](double r) { return oracle::LensVolume3(1, r, 2) / (r * r); }, 1, 2, 4000);
  const double expected = 2.0 / 2.0 * std::exp(beta * (shell + w));
  EXPECT_NEAR(SupersolutionEval(spec, x), expected, 1e-8 * expected);
}

TEST(Supersolution, AtomAtPoleHasNoSolution) {
  const Measure atom = Measure::Atomic(3, {{kOrigin, 1.0}});
  EXPECT_TRUE(std::isinf(RieszMass(atom, kOrigin, kLaplace3)));
  bool flag = false;
  const SupersolutionSpec spec{1.0, 2.0, kOrigin, kLaplace3, atom};
  EXPECT_TRUE(std::isinf(SupersolutionEval(spec, {1, 0, 0}, &flag)));
  EXPECT_TRUE(flag);
  // int_0^1 (4 pi / 3) r^3 / r dr / r for the unit ball.
  EXPECT_NEAR(RieszMass(Measure::Radial({kOrigin, 0.0, 1.0, 1.0}), kOrigin, kLaplace3),
              2 * kPi / 3, 1e-8);
}

TEST(Verify, ZeroMeasureIsUnconstrained) {
  const SampleSet samples = MakeSampleSet(Measure::Zero(3), kOrigin, 1, kFewSamples);
  const SupersolutionCheck c =
      VerifySupersolution({1.0, 2.0, kOrigin, kLaplace3, Measure::Zero(3)}, samples);
  EXPECT_TRUE(c.unconstrained);
  EXPECT_TRUE(std::isinf(c.c0));
  EXPECT_TRUE(c.decays);
}

TEST(Verify, SmallMassScaling) {
  // As lambda -> 0, v -> B f0 and C0 ~ lambda^{-1/(s-1)}.
  const SampleSet samples = MakeSampleSet(SmallBall(), kOrigin, 3, kFewSamples);
  const auto c0 = [&](double mass) {
    return VerifySupersolution({1.0, 2.0, kOrigin, kLaplace3, SmallBall(mass)}, samples).c0;
  };
  const double a = c0(1e-5), b = c0(2e-5);
  ASSERT_GT(a, 0);
  EXPECT_NEAR(a / b, 2.0, 0.02);
}

class UnitBallSolver : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    samples_ = new SampleSet(MakeSampleSet(SmallBall(), kOrigin, 7, kFewSamples));
    solver_ = new FundsolSolver(SmallBall(), kLaplace3, *samples_);
    constants_ = new ConstantsLedger(solver_->Constants());
  }
  static void TearDownTestSuite() {
    delete constants_;
    delete solver_;
    delete samples_;
  }
  static SampleSet* samples_;
  static FundsolSolver* solver_;
  static ConstantsLedger* constants_;
};

SampleSet* UnitBallSolver::samples_ = nullptr;
FundsolSolver* UnitBallSolver::solver_ = nullptr;
ConstantsLedger* UnitBallSolver::constants_ = nullptr;

TEST_F(UnitBallSolver, ConstantsArePositiveAndFinite) {
  const ConstantsLedger& k = *constants_;
  EXPECT_GT(k.c0, 0);
  EXPECT_GT(k.c0_admissible, 0);
  EXPECT_GT(k.beta, 0);
  EXPECT_TRUE(std::isfinite(k.c_sigma));
  EXPECT_TRUE(std::isfinite(k.c_hat));
  EXPECT_TRUE(std::isfinite(k.b_riesz));
  EXPECT_NEAR(k.c0_used, 0.5 * k.c0_admissible, 1e-15 * k.c0_admissible);
}

TEST_F(UnitBallSolver, PicardIsMonotoneAndBelowSupersolution) {
  PicardResult result;
  const std::vector<double> u = solver_->PicardNodes(constants_->c0_used, &result);
  EXPECT_TRUE(result.converged);
  EXPECT_TRUE(result.ledger.monotone);
  EXPECT_LE(result.residual, 1e-8);
  const std::vector<double> v = solver_->Supersolution(constants_->beta);
  for (int j = 0; j < samples_->size(); ++j) {
    const int node = solver_->sample_node(j);
    EXPECT_LE(u[node], v[node]) << "sample " << j;
  }
}

// For s <= 2, u = C0 N(u) + f0 dominates sum_{j <= J} C0^j N^j(f0).
TEST_F(UnitBallSolver, LimitDominatesSeriesPartialSums) {
  const double c0 = constants_->c0_used;
  PicardResult result;
  const std::vector<double> u = solver_->PicardNodes(c0, &result);
  const std::vector<double> f0 = solver_->F0();
  const IterationLedger iterates = IterateN(solver_->grid(), 4);
  for (int j = 0; j < samples_->size(); ++j) {
    const int node = solver_->sample_node(j);
    double partial = f0[node], weight = 1;
    for (const auto& level : iterates.history) {
      weight *= c0;
      partial += weight * level[node];
      EXPECT_LE(partial, u[node] * (1 + 1e-9)) << "sample " << j;
    }
  }
}

TEST(Picard, ZeroMeasureStopsAtOnce) {
  const SampleSet samples = MakeSampleSet(Measure::Zero(3), kOrigin, 1, kFewSamples);
  const PicardResult r = PicardIterate(Measure::Zero(3), 1.0, kLaplace3, samples);
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.ledger.m, 1);
  for (int j = 0; j < samples.size(); ++j) {
    EXPECT_EQ(r.limit[j], std::pow(samples.radii[j], kLaplace3.kernel_exp()));
  }
  EXPECT_THROW(PicardIterate(Measure::Zero(3), 0.0, kLaplace3, samples),
               std::invalid_argument);
}

TEST(Picard, AtomicRequiresAtomsAndFlagsDivergence) {
  const Measure atom = Measure::Atomic(3, {{{1, 0, 0}, 1.0}});
  SampleSet samples = MakeSampleSet(Measure::Zero(3), kOrigin, 1, kFewSamples);
  EXPECT_THROW(PicardIterate(atom, 0.1, kLaplace3, samples), std::invalid_argument);
  samples = MakeSampleSet(atom, kOrigin, 1, kFewSamples);
  const PicardResult r = PicardIterate(atom, 0.1, kLaplace3, samples);
  EXPECT_FALSE(r.converged);
  EXPECT_TRUE(r.ledger.diverged_at.has_value());
}

TEST(Sandwich, ZeroMeasurePasses) {
  const SampleSet samples = MakeSampleSet(Measure::Zero(3), kOrigin, 1, kFewSamples);
  const SandwichReport r = Sandwich(Measure::Zero(3), kLaplace3, samples);
  EXPECT_TRUE(r.pass);
  EXPECT_LE(r.constants.c1, 1.0);
  for (const auto& row : r.rows) {
    const double f0 = std::pow(row.radius, -1.0);
    EXPECT_DOUBLE_EQ(row.picard, f0);
    EXPECT_DOUBLE_EQ(row.upper, 2 * f0);
    EXPECT_NEAR(row.lower, r.constants.c1 * f0, 1e-15 * f0);
  }
}

TEST(Sandwich, TranslationInvariance) {
  const Point shift{0.75, -1.25, 0.5};
  const SampleSet a = MakeSampleSet(SmallBall(), kOrigin, 5, kFewSamples);
  SampleSet b = a;
  b.pole = shift;
  for (auto& p : b.points) p = Add(p, shift);
  const SandwichReport ra = Sandwich(SmallBall(), kLaplace3, a);
  const SandwichReport rb = Sandwich(Translate(SmallBall(), shift), kLaplace3, b);
  ASSERT_EQ(ra.rows.size(), rb.rows.size());
  EXPECT_EQ(ra.pass, rb.pass);
  for (std::size_t i = 0; i < ra.rows.size(); ++i) {
    EXPECT_NEAR(ra.rows[i].picard, rb.rows[i].picard, 1e-9 * ra.rows[i].picard);
    EXPECT_NEAR(ra.rows[i].upper, rb.rows[i].upper, 1e-9 * ra.rows[i].upper);
    EXPECT_NEAR(ra.rows[i].lower, rb.rows[i].lower, 1e-9 * ra.rows[i].lower);
  }
}

TEST(Sandwich, CsvLayout) {
  const SampleSet samples = MakeSampleSet(Measure::Zero(3), kOrigin, 1, kFewSamples);
  const std::string csv = SandwichCsv(Sandwich(Measure::Zero(3), kLaplace3, samples));
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "x0,x1,x2,radius,lower,picard,upper,ratio,verdict");
  int rows = 0;
  bool verdict = false;
  while (std::getline(in, line)) {
    if (line.rfind("# verdict=pass", 0) == 0) verdict = true;
    if (!line.empty() && line[0] != '#') ++rows;
  }
  EXPECT_EQ(rows, samples.size());
  EXPECT_TRUE(verdict);
}

TEST(Equivalence, ZeroAndAtomic) {
  const SampleSet samples = MakeSampleSet(Measure::Zero(3), kOrigin, 1, kFewSamples);
  const EquivalenceReport zero = EquivalenceCheck(Measure::Zero(3), kLaplace3, samples);
  EXPECT_EQ(zero.verdict, Equivalence::kEquivalent);
  EXPECT_EQ(zero.sup, 0.0);
  EXPECT_EQ(zero.potential, "riesz");
  EXPECT_NEAR(zero.max_ratio, zero.min_ratio, 1e-15 * zero.max_ratio);
  const Measure atom = Measure::Atomic(3, {{{1, 0, 0}, 0.5}});
  const EquivalenceReport at =
      EquivalenceCheck(atom, kLaplace3, MakeSampleSet(atom, kOrigin, 1, kFewSamples));
  EXPECT_EQ(at.verdict, Equivalence::kNotEquivalent);
  EXPECT_EQ(ToString(at.verdict), "not-equivalent");
}

TEST(Equivalence, BoundedDensityAndUnboundedSupport) {
  const SampleSet samples = MakeSampleSet(SmallBall(), kOrigin, 2, kFewSamples);
  const EquivalenceReport r = EquivalenceCheck(SmallBall(), kLaplace3, samples);
  EXPECT_EQ(r.verdict, Equivalence::kEquivalent);
  EXPECT_TRUE(std::isfinite(r.sup));
  EXPECT_GT(r.sup, 0);
  const Measure hardy = Measure::Radial({kOrigin, -2.0, 0.01, kInf});
  const EquivalenceReport u =
      EquivalenceCheck(hardy, kLaplace3, MakeSampleSet(hardy, {1, 0, 0}, 2, kFewSamples));
  EXPECT_NE(u.verdict, Equivalence::kEquivalent);
  const EquivalenceReport w = EquivalenceCheck(Measure::Zero(3), Exponents(3, 0.5, 3.0), samples);
  EXPECT_EQ(w.potential, "wolff");
}

}  // namespace
}  // namespace nlpot
