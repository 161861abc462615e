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

#ifndef NLPOT_MOMENTS_HPP_
#define NLPOT_MOMENTS_HPP_

#include <vector>

#include "nlpot/exponents.hpp"
#include "nlpot/measure.hpp"

namespace nlpot {

// The self-potential W_{alpha,s}(chi_E dsigma) tabulated against chi_E dsigma:
// integrals over E reduce to sum_i weight[i] * g(value[i]).
//
// Atoms make the table infinite.  A plain radial density uses a 1-D rule in
// u = rho^{n + gamma} (64 cosine-mapped Gauss nodes) and the radial symmetry
// of the potential.  Dyadic and box pieces are split once into 2^n subcells
// evaluated at their midpoints.  Other combinations are rejected.
struct SelfPotentialTable {
  bool infinite = false;
  double mass = 0.0;
  std::vector<double> weight;
  std::vector<double> value;
};

SelfPotentialTable TabulateSelfPotential(const Measure& measure,
                                         const RegionSpec& region,
                                         const Exponents& exponents);

// M_m = int_E (W_{alpha,s}(chi_E dsigma))^m dsigma for m >= 1.
double EnergyMoment(const Measure& measure, const RegionSpec& region, int m,
                    const Exponents& exponents);

// M_1, ..., M_{max_m} from one tabulation.
std::vector<double> EnergyMoments(const Measure& measure,
                                  const RegionSpec& region, int max_m,
                                  const Exponents& exponents);

struct MomentFit {
  double mass = 0.0;             // sigma(E)
  std::vector<double> moments;   // M_1..M_max
  // Smallest C with M_m <= C^m m! sigma(E) for every tabulated m.
  double c_hat = 0.0;
};

MomentFit FitMomentConstant(const Measure& measure, const RegionSpec& region,
                            int max_m, const Exponents& exponents);

// int_E exp(beta W_{alpha,s}(chi_E dsigma)) dsigma, summed as the series
// sum_m beta^m M_m / m! until a term drops below 1e-12 of the partial sum.
double ExpIntegrability(const Measure& measure, const RegionSpec& region,
                        double beta, const Exponents& exponents);

// Same integral summed directly over the table, for cross-checks.
double ExpIntegrabilityDirect(const SelfPotentialTable& table, double beta);
double ExpIntegrabilitySeries(const SelfPotentialTable& table, double beta);

// m sum_j lambda_j (sum_{k<=j} lambda_k)^{m-1} - (sum_j lambda_j)^m, which is
// nonnegative for nonnegative sequences.
double SummationByPartsPowerGap(const std::vector<double>& lambda, int m);

// 2 exp(sum_j lambda_j) - sum_j lambda_j exp(sum_{k>=j} lambda_k), which is
// nonnegative whenever 0 <= lambda_j <= 1.
double SummationByPartsExpGap(const std::vector<double>& lambda);

}  // namespace nlpot

#endif  // NLPOT_MOMENTS_HPP_
