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

#ifndef NLPOT_POTENTIAL_HPP_
#define NLPOT_POTENTIAL_HPP_

#include "nlpot/exponents.hpp"
#include "nlpot/geometry.hpp"
#include "nlpot/measure.hpp"

namespace nlpot {

enum class PotentialKind { kWolff, kRiesz };

struct PotentialQuery {
  Exponents exponents;
  Point point;
  double rho = kInf;  // truncation radius
  PotentialKind kind = PotentialKind::kWolff;
};

struct PotentialOptions {
  double rel_tol = 1e-9;
  double abs_floor = 1e-14;
};

// The radial integral
//
//   int_{r0}^{r1} (sigma(B(x, r)) r^{-e})^p dr / r
//
// with 0 <= r0 < r1 <= inf, e > 0 and p > 0.  Step profiles are summed in
// closed form.  Other profiles are integrated in log r, with power-law tails
// below the first support contact and beyond the saturation radius.  Returns
// +inf when the integral diverges.
double PowerIntegral(const Measure& measure, const Point& x, double r0,
                     double r1, double e, double p,
                     const PotentialOptions& options = {});

// W^rho_{alpha,s} sigma(x) = int_0^rho (sigma(B(x,r)) / r^{n - alpha s})^{1/(s-1)} dr/r.
double Wolff(const Measure& measure, const Exponents& exponents,
             const Point& x, double rho = kInf,
             const PotentialOptions& options = {});

// I^rho_order sigma(x) = int_0^rho sigma(B(x,r)) / r^{n - order} dr/r, with
// 0 < order < n.
double Riesz(const Measure& measure, double order, const Point& x,
             double rho = kInf, const PotentialOptions& options = {});

// Dispatches on the query kind; a Riesz query uses exponents.alpha() as the
// order.
double Evaluate(const Measure& measure, const PotentialQuery& query,
                const PotentialOptions& options = {});

// int_t^inf [(sigma(B(x,r))/r^{n-alpha s})^{1/(s-1)}
//            - (sigma(B(y,r))/r^{n-alpha s})^{1/(s-1)}] dr/r, for |x - y| < t.
double WolffTailGap(const Measure& measure, const Point& x, const Point& y,
                    double t, const Exponents& exponents,
                    const PotentialOptions& options = {});

}  // namespace nlpot

#endif  // NLPOT_POTENTIAL_HPP_
