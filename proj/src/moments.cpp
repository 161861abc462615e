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

#include "nlpot/moments.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <variant>

#include "nlpot/potential.hpp"
#include "nlpot/quadrature.hpp"

namespace nlpot {
namespace {

constexpr int kRadialNodes = 64;
constexpr int kMaxSeriesTerms = 2000;

void AddPieces(const Measure& sigma_e, const std::vector<BoxPiece>& pieces,
               const Exponents& e, SelfPotentialTable& t) {
  const int n = e.n();
  for (const auto& p : pieces) {
    if (p.mass <= 0) continue;
    for (int mask = 0; mask < (1 << n); ++mask) {
      Point mid(n);
      for (int j = 0; j < n; ++j) {
        const double q = 0.25 * (p.hi[j] - p.lo[j]);
        mid[j] = p.lo[j] + (((mask >> j) & 1) ? 3 * q : q);
      }
      t.weight.push_back(p.mass / (1 << n));
      t.value.push_back(Wolff(sigma_e, e, mid));
    }
  }
}

void AddRadial(const Measure& sigma_e, const Exponents& e,
               SelfPotentialTable& t) {
  const RadialDensitySpec& s = sigma_e.radial();
  const int n = e.n();
  const double a = n + s.exponent;
  if (!std::isfinite(s.cutoff)) {
    throw std::invalid_argument("energy moments need a bounded region");
  }
  const double u_max = std::pow(s.cutoff, a);
  const double scale = s.coefficient * UnitSphereArea(n) / a;
  const GaussRule& rule = GaussLegendre(kRadialNodes);
  // u = u_max (1 - cos theta) / 2 with theta Gauss-Legendre on [0, pi].
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double theta = 0.5 * std::numbers::pi * (rule.nodes[i] + 1.0);
    const double u = 0.5 * u_max * (1.0 - std::cos(theta));
    const double jac = 0.5 * u_max * std::sin(theta) * 0.5 * std::numbers::pi;
    Point x = s.center;
    x[0] += std::pow(u, 1.0 / a);
    t.weight.push_back(scale * rule.weights[i] * jac);
    t.value.push_back(Wolff(sigma_e, e, x));
  }
}

void Collect(const Measure& part, const Measure& sigma_e, const Exponents& e,
             SelfPotentialTable& t) {
  switch (part.kind()) {
    case MeasureKind::kAtomic:
      for (const auto& atom : part.atoms()) {
        if (atom.mass > 0) t.infinite = true;
      }
      break;
    case MeasureKind::kDyadic:
    case MeasureKind::kBoxes:
      AddPieces(sigma_e, part.pieces(), e, t);
      break;
    case MeasureKind::kRadial:
      if (!part.radial_is_plain() || sigma_e.kind() != MeasureKind::kRadial) {
        throw std::invalid_argument(
            "energy moments support a radial density only on its own "
            "concentric ball: " + part.Describe());
      }
      AddRadial(sigma_e, e, t);
      break;
    case MeasureKind::kSum:
      for (const auto& p : part.parts()) Collect(p, sigma_e, e, t);
      break;
  }
}

// True when the region cannot meet the support ball, so sigma(E) = 0.
bool MissesSupport(const RegionSpec& region, const BallRegion& support) {
  if (support.center.empty() || std::isinf(support.radius)) return support.center.empty();
  if (const auto* b = std::get_if<BallRegion>(&region.shape)) {
    return Distance(b->center, support.center) >= b->radius + support.radius;
  }
  if (const auto* c = std::get_if<CubeRegion>(&region.shape)) {
    Point lo, hi;
    CubeCorners(*c, lo, hi);
    return BoxMinDistance(Subtract(lo, support.center), Subtract(hi, support.center)) >=
           support.radius;
  }
  for (const auto& member : std::get<UnionRegion>(region.shape).members) {
    if (!MissesSupport(member, support)) return false;
  }
  return true;
}

}  // namespace

SelfPotentialTable TabulateSelfPotential(const Measure& measure,
                                         const RegionSpec& region,
                                         const Exponents& exponents) {
  if (measure.dim() != exponents.n()) {
    throw std::invalid_argument("measure and exponents disagree on n");
  }
  SelfPotentialTable t;
  if (MissesSupport(region, measure.SupportBall())) return t;
  const Measure sigma_e = Restrict(measure, region);
  if (sigma_e.is_zero()) return t;
  t.mass = sigma_e.TotalMass();
  Collect(sigma_e, sigma_e, exponents, t);
  for (std::size_t i = 0; i < t.value.size(); ++i) {
    if (std::isinf(t.value[i]) && t.weight[i] > 0) t.infinite = true;
  }
  return t;
}

std::vector<double> EnergyMoments(const Measure& measure,
                                  const RegionSpec& region, int max_m,
                                  const Exponents& exponents) {
  if (max_m < 1) throw std::invalid_argument("moment order must be >= 1");
  const SelfPotentialTable t = TabulateSelfPotential(measure, region, exponents);
  std::vector<double> out(max_m, 0.0);
  if (t.infinite) {
    std::fill(out.begin(), out.end(), kInf);
    return out;
  }
  for (std::size_t i = 0; i < t.value.size(); ++i) {
    double power = 1.0;
    for (int m = 0; m < max_m; ++m) {
      power *= t.value[i];
      out[m] += t.weight[i] * power;
    }
  }
  return out;
}

double EnergyMoment(const Measure& measure, const RegionSpec& region, int m,
                    const Exponents& exponents) {
  return EnergyMoments(measure, region, m, exponents).back();
}

MomentFit FitMomentConstant(const Measure& measure, const RegionSpec& region,
                            int max_m, const Exponents& exponents) {
  MomentFit fit;
  fit.mass = Restrict(measure, region).TotalMass();
  fit.moments = EnergyMoments(measure, region, max_m, exponents);
  if (fit.mass <= 0) return fit;
  double factorial = 1.0;
  for (int m = 1; m <= max_m; ++m) {
    factorial *= m;
    const double c = std::pow(fit.moments[m - 1] / (factorial * fit.mass), 1.0 / m);
    fit.c_hat = std::max(fit.c_hat, c);
  }
  return fit;
}

double ExpIntegrabilityDirect(const SelfPotentialTable& table, double beta) {
  if (table.infinite) return kInf;
  double s = 0;
  for (std::size_t i = 0; i < table.value.size(); ++i) {
    s += table.weight[i] * std::exp(beta * table.value[i]);
  }
  return s;
}

double ExpIntegrabilitySeries(const SelfPotentialTable& table, double beta) {
  if (table.mass <= 0) return 0.0;
  if (table.infinite) return kInf;
  // term_i holds weight_i (beta W_i)^m / m!, advanced in place.
  std::vector<double> term = table.weight;
  double total = table.mass;
  for (int m = 1; m <= kMaxSeriesTerms; ++m) {
    double sum = 0;
    for (std::size_t i = 0; i < term.size(); ++i) {
      term[i] *= beta * table.value[i] / m;
      sum += term[i];
    }
    total += sum;
    if (!std::isfinite(total)) return kInf;
    if (sum <= 1e-12 * total) return total;
  }
  return kInf;
}

double ExpIntegrability(const Measure& measure, const RegionSpec& region,
                        double beta, const Exponents& exponents) {
  if (!(beta > 0)) throw std::invalid_argument("beta must be positive");
  return ExpIntegrabilitySeries(
      TabulateSelfPotential(measure, region, exponents), beta);
}

double SummationByPartsPowerGap(const std::vector<double>& lambda, int m) {
  if (m < 1) throw std::invalid_argument("power must be >= 1");
  double prefix = 0, rhs = 0;
  for (double l : lambda) {
    if (l < 0) throw std::invalid_argument("sequence must be nonnegative");
    prefix += l;
    rhs += l * std::pow(prefix, m - 1);
  }
  return m * rhs - std::pow(prefix, m);
}

double SummationByPartsExpGap(const std::vector<double>& lambda) {
  double total = 0;
  for (double l : lambda) {
    if (l < 0 || l > 1) throw std::invalid_argument("entries must lie in [0, 1]");
    total += l;
  }
  double suffix = 0, lhs = 0;
  for (auto it = lambda.rbegin(); it != lambda.rend(); ++it) {
    suffix += *it;
    lhs += *it * std::exp(suffix);
  }
  return 2 * std::exp(total) - lhs;
}

}  // namespace nlpot
