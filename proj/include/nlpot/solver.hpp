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

#ifndef NLPOT_SOLVER_HPP_
#define NLPOT_SOLVER_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nlpot/exponents.hpp"
#include "nlpot/field.hpp"
#include "nlpot/measure.hpp"
#include "nlpot/nonlinear_operator.hpp"
#include "nlpot/operator_grid.hpp"

namespace nlpot {

// v(x) = B d^kappa exp(beta S(x)) exp(beta W^d_{alpha,s} sigma(x)), d = |x - x0|,
// S(x) = sum_{l <= j_x} 2^{l(alpha s - n)} sigma(B(x0, 2^{l+1})).
struct SupersolutionSpec {
  double beta = 1.0;
  double prefactor = 2.0;
  Point pole;
  Exponents exponents;
  Measure measure;
};

// Evaluates v directly from the measure (no grid).  Returns +inf, and sets
// *no_solution when given, if int_0^1 sigma(B(x0,r)) / r^{n - alpha s} dr/r
// diverges.
double SupersolutionEval(const SupersolutionSpec& spec, const Point& x,
                         bool* no_solution = nullptr);

// int_0^1 sigma(B(x0, r)) / r^{n - alpha s} dr/r.
double RieszMass(const Measure& measure, const Point& pole,
                 const Exponents& exponents);

struct SolverOptions {
  GridOptions grid;
  double prefactor = 2.0;       // B
  int moment_order = 6;         // moments used to fit C-hat
  int max_halvings = 20;
  int max_m = 64;
  double divergence_cap = 1e12;
  double tolerance = 1e-10;     // relative sup-change that ends Picard
  double slack = 1e-9;          // relative slack of the sandwich verdict
  int c2_count = 16;
  double c2_min = 1e-3;
  double c2_max = 10.0;
};

struct ConstantsLedger {
  double c_sigma = 0;   // sup sigma(B(x, r)) / r^{n - alpha s}
  double c_hat = 0;     // fitted exponential-integrability constant
  double beta = 0;
  int halvings = 0;
  double c0 = 0;        // inf over samples of v / N(v)
  double c0_admissible = 0;  // inf over all nodes of (v - f0) / N(v)
  double c0_used = 0;   // constant the Picard iteration runs with
  double b_riesz = 0;
  double c1 = 0;
  double c2 = 0;
};

struct SupersolutionCheck {
  double c0 = 0;              // +inf when N(v) vanishes on every sample
  int worst = -1;             // sample index attaining c0
  double c0_admissible = 0;
  bool unconstrained = false;  // N(v) = 0 everywhere
  std::vector<int> flagged;   // samples with v = N(v) = +inf
  bool decays = false;        // max of v decreases over the 3 outer shells
};

struct PicardResult {
  IterationLedger ledger;     // values at the samples
  std::vector<double> limit;  // last iterate at the samples
  bool converged = false;
  double residual = kInf;     // max |u - (C0 N(u) + f0)| / u over samples
  double c0 = 0;
};

struct SandwichRow {
  Point x;
  double radius = 0;
  double lower = 0;
  double picard = 0;
  double upper = 0;
  double local_wolff = 0;  // W^{d} sigma(x)
  double pole_riesz = 0;   // I^{d}_{alpha s} sigma(x0)
  bool pass = false;
};

struct SandwichReport {
  std::vector<SandwichRow> rows;
  ConstantsLedger constants;
  bool constructible = false;
  bool converged = false;
  bool monotone = false;
  bool decays = false;
  int iterations = 0;
  double residual = kInf;
  bool pass = false;
  std::uint64_t seed = 0;
  double slack = 0;
  double tolerance = 0;
  int max_m = 0;
  std::string diagnostics;
};

enum class Equivalence { kEquivalent, kNotEquivalent, kUndetermined };

struct EquivalenceReport {
  Equivalence verdict = Equivalence::kUndetermined;
  std::string potential;  // "riesz" (s <= 2) or "wolff" (s > 2)
  double sup = 0;         // sup over nodes of the potential with rho = inf
  double max_ratio = 0;   // max over samples of upper / lower
  double min_ratio = 0;
  std::string diagnostics;
};

std::string ToString(Equivalence verdict);

// All computations on sigma_h = Discretize(sigma, options.grid.level, pole),
// evaluated on the cell centres, the samples and the pole.
class FundsolSolver {
 public:
  FundsolSolver(const Measure& measure, const Exponents& exponents,
                const SampleSet& samples, const SolverOptions& options = {});
  // `grid` must have been built with samples.points as extra nodes around
  // samples.pole.
  FundsolSolver(OperatorGrid grid, const SampleSet& samples,
                const SolverOptions& options = {});

  const OperatorGrid& grid() const { return grid_; }
  const SampleSet& samples() const { return samples_; }
  int sample_node(int j) const { return grid_.extra_node(j); }

  std::vector<double> F0() const;                         // per node
  std::vector<double> Supersolution(double beta) const;   // per node
  double RieszMass() const;
  double FitCHat() const;
  double GrowthConstant() const;

  SupersolutionCheck Verify(const std::vector<double>& v) const;
  // The full constant search: beta by halving, then C0.
  ConstantsLedger Constants() const;

  // Per node; u_0 = f0 and u_{m+1} = c0 N(u_m) + f0.
  PicardResult Picard(double c0) const;
  std::vector<double> PicardNodes(double c0, PicardResult* result) const;

  SandwichReport Sandwich() const;
  EquivalenceReport Check() const;

 private:
  OperatorGrid grid_;
  SampleSet samples_;
  SolverOptions options_;
};

SupersolutionCheck VerifySupersolution(const SupersolutionSpec& spec,
                                       const SampleSet& samples,
                                       const SolverOptions& options = {});

// Atomic measures are iterated exactly on atoms and samples.
PicardResult PicardIterate(const Measure& measure, double c0,
                           const Exponents& exponents, const SampleSet& samples,
                           const SolverOptions& options = {});

SandwichReport Sandwich(const Measure& measure, const Exponents& exponents,
                        const SampleSet& samples,
                        const SolverOptions& options = {});

EquivalenceReport EquivalenceCheck(const Measure& measure,
                                   const Exponents& exponents,
                                   const SampleSet& samples,
                                   const SolverOptions& options = {});

// One row per sample ("x0,...,x{n-1},radius,lower,picard,upper,ratio,verdict")
// then "# key=value" summary lines.
std::string SandwichCsv(const SandwichReport& report);

}  // namespace nlpot

#endif  // NLPOT_SOLVER_HPP_
