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

#ifndef NLPOT_NONLINEAR_OPERATOR_HPP_
#define NLPOT_NONLINEAR_OPERATOR_HPP_

#include <functional>
#include <optional>
#include <vector>

#include "nlpot/exponents.hpp"
#include "nlpot/field.hpp"
#include "nlpot/measure.hpp"
#include "nlpot/operator_grid.hpp"

namespace nlpot {

// N(f)(x) = W_{alpha,s}(f^{s-1} dsigma)(x).  Exact for atomic sigma; +inf when
// f is infinite at an atom of positive mass.
double ApplyN(const Measure& measure, const FieldFunction& f, const Point& x,
              const Exponents& exponents);

struct IterationLedger {
  int m = 0;                   // iterations performed
  std::vector<double> values;  // latest values at the sample points
  // values after each iteration, history[k] holding iterate k + 1
  std::vector<std::vector<double>> history;
  bool monotone = true;        // every point nondecreasing from one iterate to the next
  std::optional<int> diverged_at;  // first sample index that became +inf
};

// N^m(f0) at every sample point, f0 = |. - pole|^{(alpha s - n)/(s - 1)}.
// Atomic measures are iterated exactly on atoms and samples; other measures
// go through an OperatorGrid built with `grid_options`.
IterationLedger IterateN(const Measure& measure, int m,
                         const Exponents& exponents, const SampleSet& samples,
                         const GridOptions& grid_options = {});

// The same on a prebuilt grid; values are reported at every node.
IterationLedger IterateN(const OperatorGrid& grid, int m);

// sum_{k <= j_x} 2^{k(alpha s - n)} sigma(B_{k+1} \ B_k) with B_k = B(x0, 2^k)
// and 2^{j_x} <= d < 2^{j_x + 1}.  `pole_mass(r)` returns sigma(B(x0, r))
// without any atom sitting at x0.
double ShellSum(const std::function<double(double)>& pole_mass, double d,
                const Exponents& exponents);

// ((s-1)/(n-alpha s) 8^kappa)^m d^kappa ((1/m!) S^m)^{1/(s-1)}.
double ShellBoundFormula(int m, double d, double shell_sum,
                         const Exponents& exponents);

// (3/2)^kappa (1/m!) d^kappa J^m with
// J = int_0^d (sigma(B(x, r/2)) / r^{n - alpha s})^{1/(s-1)} dr/r.
double RadialBoundFormula(int m, double d, double half_radius_integral,
                          const Exponents& exponents);

// c1 d^kappa exp(c2 W) exp(c2 I).
double TheoremBoundFormula(double d, double local_wolff, double pole_riesz,
                           double c1, double c2, const Exponents& exponents);

double LowerBoundShell(const Measure& measure, int m, const Point& x,
                       const Point& pole, const Exponents& exponents);
double LowerBoundRadial(const Measure& measure, int m, const Point& x,
                        const Point& pole, const Exponents& exponents);

// c1 |x - x0|^kappa exp(c2 W^{|x-x0|}_{alpha,s} sigma(x))
//    exp(c2 I^{|x-x0|}_{alpha s} sigma(x0)).
double TheoremLowerBound(const Measure& measure, const Point& x,
                         const Point& pole, const Exponents& exponents,
                         double c1, double c2);

// alpha = 2k/(k+1), s = k+1 for 1 <= k < n/2.
Exponents HessianParams(int k, int n);

// alpha = 1, s = p for 1 < p < n.
Exponents PlaplaceParams(double p, int n);

// ((p-1)/(n-p)) (n |S^{n-1}|)^{-1/(p-1)}, with |S^{n-1}| the area of the unit sphere.
double PlaplaceGamma(double p, int n);

}  // namespace nlpot

#endif  // NLPOT_NONLINEAR_OPERATOR_HPP_
