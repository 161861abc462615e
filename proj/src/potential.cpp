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

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nlpot/quadrature.hpp"

namespace nlpot {
namespace {

// int_a^b r^{-q - 1} dr for 0 <= a < b <= inf and q > 0.
double PowerPiece(double a, double b, double q) {
  if (a <= 0) return kInf;
  if (std::isinf(b)) return std::pow(a, -q) / q;
  return std::pow(a, -q) * -std::expm1(-q * std::log(b / a)) / q;
}

double StepIntegral(const BallMassProfile& profile, double r0, double r1,
                    double e, double p) {
  const auto& b = profile.breakpoints;
  const double q = e * p;
  double total = 0;
  for (std::size_t k = 0; k < b.size(); ++k) {
    // sigma(B(x, r)) = cumulative[k] on (b[k], b[k + 1]].
    const double lo = std::max(b[k], r0);
    const double hi = std::min(k + 1 < b.size() ? b[k + 1] : kInf, r1);
    if (!(hi > lo)) continue;
    const double mass = profile.cumulative[k];
    if (lo <= 0) return kInf;
    total += std::pow(mass, p) * PowerPiece(lo, hi, q);
  }
  return total;
}

void CollectAtomDistances(const Measure& m, const Point& x,
                          std::vector<double>& out) {
  if (m.kind() == MeasureKind::kAtomic) {
    for (const auto& a : m.atoms()) out.push_back(Distance(a.x, x));
  } else if (m.kind() == MeasureKind::kSum) {
    for (const auto& part : m.parts()) CollectAtomDistances(part, x, out);
  }
}

void CollectKinks(const Measure& m, const Point& x, std::vector<double>& out) {
  if (m.kind() == MeasureKind::kRadial) {
    const RadialDensitySpec& r = m.radial();
    const double d = Distance(x, r.center);
    out.push_back(d);
    if (std::isfinite(r.cutoff)) {
      out.push_back(std::fabs(d - r.cutoff));
      out.push_back(d + r.cutoff);
    }
  } else if (m.kind() == MeasureKind::kSum) {
    for (const auto& part : m.parts()) CollectKinks(part, x, out);
  }
}

void CheckIntegralArgs(double e, double p) {
  if (!(e > 0) || !(p > 0) || !std::isfinite(e) || !std::isfinite(p)) {
    throw std::invalid_argument("power integral needs e > 0 and p > 0");
  }
}

}  // namespace

double PowerIntegral(const Measure& measure, const Point& x, double r0,
                     double r1, double e, double p,
                     const PotentialOptions& options) {
  CheckIntegralArgs(e, p);
  if (static_cast<int>(x.size()) != measure.dim() || !AllFinite(x)) {
    throw std::invalid_argument("evaluation point must be finite with the "
                                "measure's dimension");
  }
  if (std::isnan(r0) || std::isnan(r1) || r0 < 0) {
    throw std::invalid_argument("integration limits must satisfy 0 <= r0");
  }
  if (!(r1 > r0) || measure.is_zero()) return 0.0;
  if (measure.is_atomic()) {
    return StepIntegral(MakeProfile(measure, x), r0, r1, e, p);
  }

  const auto mass = [&](double r) { return measure.BallMass(x, r); };
  const double q = e * p;
  const LocalGrowth growth = measure.Growth(x);
  const double d0 = measure.NearestSupportDistance(x);
  const double r_far = measure.FarthestSupportDistance(x);
  if (r0 == 0 && growth.atom_mass > 0) return kInf;

  double total = 0;
  double lo = std::max(r0, d0);
  double hi = std::min(r1, r_far);

  // Beyond r_far every ball holds all of the mass.
  if (r1 > r_far) {
    if (std::isfinite(r_far)) {
      const double total_mass = measure.TotalMass();
      total += std::pow(total_mass, p) * PowerPiece(std::max(r_far, r0), r1, q);
    } else {
      // Unbounded support: read the growth rate at infinity off two large
      // radii and close the integral with the matching power law.
      const double big = 1e6 * (1.0 + Norm(x) + std::max(r0, 1.0));
      if (big < r1) {
        const double m1 = mass(big), m2 = mass(2 * big);
        const double a_inf = std::log2(m2 / m1);
        if (!(a_inf < e - 1e-9)) return kInf;
        total += std::pow(m1 * std::pow(big, -e), p) / ((e - a_inf) * p) *
                 (std::isinf(r1) ? 1.0
                                 : -std::expm1(-(e - a_inf) * p *
                                               std::log(r1 / big)));
        hi = big;
      }
    }
  }
  if (!(hi > lo)) return total;

  std::vector<double> cuts;
  CollectAtomDistances(measure, x, cuts);
  CollectKinks(measure, x, cuts);

  if (lo == 0) {
    double r_small = 1e-6 * hi;
    for (double c : cuts) {
      if (c > 0) r_small = std::min(r_small, 0.5 * c);
    }
    const double m_small = mass(r_small);
    if (m_small > 0) {
      double g = growth.exponent;
      if (std::isnan(g) || measure.kind() == MeasureKind::kSum) {
        const double m_half = mass(0.5 * r_small);
        g = m_half > 0 ? std::log2(m_small / m_half) : kInf;
      }
      const double rate = (g - e) * p;
      if (!(rate > 1e-12)) return kInf;
      total += std::pow(m_small * std::pow(r_small, -e), p) / rate;
    }
    lo = r_small;
  }

  cuts.push_back(lo);
  cuts.push_back(hi);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::remove_if(cuts.begin(), cuts.end(),
                            [&](double c) { return c < lo || c > hi; }),
             cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  QuadratureOptions qo;
  qo.rel_tol = options.rel_tol;
  qo.abs_floor = options.abs_floor;
  const auto integrand = [&](double u) {
    const double r = std::exp(u);
    const double m = mass(r);
    return m > 0 ? std::pow(m * std::pow(r, -e), p) : 0.0;
  };
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = std::log(cuts[i]), b = std::log(cuts[i + 1]);
    if (!(b > a)) continue;
    qo.initial_panels =
        std::clamp(static_cast<int>(std::ceil((b - a) / 0.25)), 4, 64);
    total += AdaptiveSimpson(integrand, a, b, qo).value;
    if (std::isinf(total)) return kInf;
  }
  return total;
}

double Wolff(const Measure& measure, const Exponents& exponents,
             const Point& x, double rho, const PotentialOptions& options) {
  if (measure.dim() != exponents.n()) {
    throw std::invalid_argument("measure and exponents disagree on n");
  }
  if (!(rho > 0)) throw std::invalid_argument("truncation rho must be > 0");
  return PowerIntegral(measure, x, 0.0, rho, exponents.codim(),
                       exponents.wolff_power(), options);
}

double Riesz(const Measure& measure, double order, const Point& x, double rho,
             const PotentialOptions& options) {
  const int n = measure.dim();
  if (!(order > 0) || !(order < n)) {
    throw std::invalid_argument("Riesz order must lie in (0, n)");
  }
  if (!(rho > 0)) throw std::invalid_argument("truncation rho must be > 0");
  return PowerIntegral(measure, x, 0.0, rho, n - order, 1.0, options);
}

double Evaluate(const Measure& measure, const PotentialQuery& query,
                const PotentialOptions& options) {
  if (query.kind == PotentialKind::kWolff) {
    return Wolff(measure, query.exponents, query.point, query.rho, options);
  }
  if (measure.dim() != query.exponents.n()) {
    throw std::invalid_argument("measure and exponents disagree on n");
  }
  return Riesz(measure, query.exponents.alpha(), query.point, query.rho,
               options);
}

double WolffTailGap(const Measure& measure, const Point& x, const Point& y,
                    double t, const Exponents& exponents,
                    const PotentialOptions& options) {
  if (!(Distance(x, y) < t)) {
    throw std::invalid_argument("tail gap needs |x - y| < t");
  }
  if (x == y || measure.is_zero()) return 0.0;
  const double r_max = std::max(measure.FarthestSupportDistance(x),
                                measure.FarthestSupportDistance(y));
  if (std::isinf(r_max)) {
    throw std::invalid_argument("tail gap needs a compactly supported measure");
  }
  if (r_max <= t) return 0.0;
  const double e = exponents.codim(), p = exponents.wolff_power();
  return PowerIntegral(measure, x, t, r_max, e, p, options) -
         PowerIntegral(measure, y, t, r_max, e, p, options);
}

}  // namespace nlpot
