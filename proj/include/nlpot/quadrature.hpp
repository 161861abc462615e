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

#ifndef NLPOT_QUADRATURE_HPP_
#define NLPOT_QUADRATURE_HPP_

#include <functional>
#include <limits>
#include <vector>

namespace nlpot {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

// Gauss-Legendre rule with `order` nodes.  Rules are computed once and cached.
const GaussRule& GaussLegendre(int order);

// Integrates f over [a, b] with a fixed Gauss-Legendre rule.
double GaussIntegrate(const std::function<double(double)>& f, double a,
                      double b, int order);

// Same, after the substitution x = a + (b - a)(1 - cos t)/2, which removes
// square-root behaviour at both endpoints.
double GaussIntegrateCosine(const std::function<double(double)>& f, double a,
                            double b, int order);

struct QuadratureOptions {
  double rel_tol = 1e-8;
  double abs_floor = 1e-14;
  int max_depth = 48;
  int initial_panels = 8;
  // Refinement stops, and the result is marked unconverged, once this many
  // integrand evaluations have been spent.
  long max_evaluations = 1'000'000;
};

struct QuadratureResult {
  double value = 0.0;
  bool converged = true;
  long evaluations = 0;
};

// Adaptive Simpson bisection.  Each panel is accepted once the two-halves
// estimate differs from the whole-panel estimate by less than 15 times its
// share of the tolerance, and the accepted value carries the Richardson
// correction.  A +inf integrand value makes the result +inf.
QuadratureResult AdaptiveSimpson(const std::function<double(double)>& f,
                                 double a, double b,
                                 const QuadratureOptions& options = {});

// AdaptiveSimpson after the substitution x = a + (b - a)(1 - cos t)/2.  The
// integrand is never evaluated at the endpoints themselves.
QuadratureResult AdaptiveCosine(const std::function<double(double)>& f,
                                double a, double b,
                                const QuadratureOptions& options = {});

}  // namespace nlpot

#endif  // NLPOT_QUADRATURE_HPP_
