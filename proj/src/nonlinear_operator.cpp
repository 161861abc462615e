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
#include <stdexcept>

#include "nlpot/potential.hpp"

namespace nlpot {
namespace {

constexpr int kMaxShellLevels = 2000;

void CheckPole(const Point& x, const Point& pole, int n) {
  if (static_cast<int>(x.size()) != n || static_cast<int>(pole.size()) != n) {
    throw std::invalid_argument("points must lie in R^n");
  }
  if (x == pole) throw std::invalid_argument("x must differ from the pole");
}

void Track(IterationLedger& ledger, std::vector<double> next,
           const std::vector<double>* previous) {
  for (std::size_t i = 0; i < next.size(); ++i) {
    if (previous && next[i] < (*previous)[i]) ledger.monotone = false;
    if (!ledger.diverged_at && std::isinf(next[i])) {
      ledger.diverged_at = static_cast<int>(i);
    }
  }
  ledger.history.push_back(next);
  ledger.values = std::move(next);
  ++ledger.m;
}

double Factorial(int m) {
  double f = 1;
  for (int k = 2; k <= m; ++k) f *= k;
  return f;
}

}  // namespace

double ApplyN(const Measure& measure, const FieldFunction& f, const Point& x,
              const Exponents& exponents) {
  if (measure.dim() != exponents.n()) {
    throw std::invalid_argument("measure and exponents disagree on n");
  }
  if (measure.is_zero()) return 0.0;
  const double power = exponents.s() - 1.0;
  if (measure.is_atomic()) {
    std::vector<Atom> atoms;
    for (const auto& a : measure.atoms()) {
      const double v = f(a.x);
      if (!(v >= 0)) throw std::invalid_argument("field must be nonnegative");
      if (std::isinf(v)) return kInf;
      atoms.push_back({a.x, a.mass * std::pow(v, power)});
    }
    return Wolff(Measure::Atomic(measure.dim(), std::move(atoms)), exponents, x);
  }
  return Wolff(Reweight(measure, f.AsPointFunction(), power), exponents, x);
}

IterationLedger IterateN(const OperatorGrid& grid, int m) {
  if (m < 1) throw std::invalid_argument("iteration count must be >= 1");
  const double kappa = grid.exponents().kernel_exp();
  std::vector<double> f(grid.nodes());
  for (int v = 0; v < grid.nodes(); ++v) {
    const double d = Distance(grid.node(v), grid.pole());
    f[v] = d == 0 ? kInf : std::pow(d, kappa);
  }
  IterationLedger ledger;
  for (int k = 0; k < m; ++k) {
    std::vector<double> next = grid.ApplyN(f);
    Track(ledger, next, k ? &f : nullptr);
    f = std::move(next);
  }
  return ledger;
}

IterationLedger IterateN(const Measure& measure, int m,
                         const Exponents& exponents, const SampleSet& samples,
                         const GridOptions& grid_options) {
  if (m < 1) throw std::invalid_argument("iteration count must be >= 1");
  if (measure.dim() != exponents.n()) {
    throw std::invalid_argument("measure and exponents disagree on n");
  }
  const int count = samples.size();
  if (measure.is_zero()) {
    IterationLedger ledger;
    for (int k = 0; k < m; ++k) {
      Track(ledger, std::vector<double>(count, 0.0),
            k ? &ledger.values : nullptr);
    }
    return ledger;
  }
  if (!measure.is_atomic()) {
    const OperatorGrid grid(measure, exponents, samples.pole, samples.points,
                            grid_options);
    IterationLedger full = IterateN(grid, m);
    IterationLedger ledger;
    for (int k = 0; k < m; ++k) {
      std::vector<double> at(count);
      for (int j = 0; j < count; ++j) at[j] = full.history[k][grid.extra_node(j)];
      Track(ledger, std::move(at), k ? &ledger.values : nullptr);
    }
    return ledger;
  }
  // Atomic: the field is only ever needed at the atoms.
  const auto& atoms = measure.atoms();
  const double kappa = exponents.kernel_exp();
  std::vector<double> at_atoms(atoms.size());
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const double d = Distance(atoms[i].x, samples.pole);
    at_atoms[i] = d == 0 ? kInf : std::pow(d, kappa);
  }
  IterationLedger ledger;
  for (int k = 0; k < m; ++k) {
    const FieldFunction f = FieldFunction::Tabulated(
        [&] {
          std::vector<Point> pts;
          for (const auto& a : atoms) pts.push_back(a.x);
          return pts;
        }(),
        at_atoms);
    std::vector<double> next_atoms(atoms.size()), at_samples(count);
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      next_atoms[i] = ApplyN(measure, f, atoms[i].x, exponents);
    }
    for (int j = 0; j < count; ++j) {
      const int i = [&] {
        for (std::size_t t = 0; t < atoms.size(); ++t) {
          if (atoms[t].x == samples.points[j]) return static_cast<int>(t);
        }
        return -1;
      }();
      at_samples[j] = i >= 0 ? next_atoms[i]
                             : ApplyN(measure, f, samples.points[j], exponents);
    }
    at_atoms = std::move(next_atoms);
    Track(ledger, std::move(at_samples), k ? &ledger.values : nullptr);
  }
  return ledger;
}

double ShellSum(const std::function<double(double)>& pole_mass, double d,
                const Exponents& exponents) {
  if (!(d > 0)) throw std::invalid_argument("distance must be positive");
  const int jx = static_cast<int>(std::floor(std::log2(d)));
  // Guard against log2 rounding at exact powers of two.
  int j = jx;
  if (std::ldexp(1.0, j) > d) --j;
  if (std::ldexp(1.0, j + 1) <= d) ++j;
  const double w = exponents.alpha() * exponents.s() - exponents.n();
  double sum = 0;
  double upper = pole_mass(std::ldexp(1.0, j + 1));
  for (int k = j; k > j - kMaxShellLevels; --k) {
    const double lower = pole_mass(std::ldexp(1.0, k));
    const double weight = std::pow(2.0, k * w);
    sum += weight * std::max(0.0, upper - lower);
    // Everything still to come is bounded by weight * lower times a
    // geometric factor; stop once that is negligible.
    if (lower <= 0 || weight * lower <= 1e-17 * sum) break;
    upper = lower;
  }
  return sum;
}

double ShellBoundFormula(int m, double d, double shell_sum,
                         const Exponents& e) {
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  const double kappa = e.kernel_exp();
  const double base = (e.s() - 1.0) / e.codim() * std::pow(8.0, kappa);
  return std::pow(base, m) * std::pow(d, kappa) *
         std::pow(std::pow(shell_sum, m) / Factorial(m), e.wolff_power());
}

double RadialBoundFormula(int m, double d, double half_radius_integral,
                          const Exponents& e) {
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  const double kappa = e.kernel_exp();
  return std::pow(1.5, kappa) / Factorial(m) * std::pow(d, kappa) *
         std::pow(half_radius_integral, m);
}

double TheoremBoundFormula(double d, double local_wolff, double pole_riesz,
                           double c1, double c2, const Exponents& e) {
  const double x = c2 * (local_wolff + pole_riesz);
  if (std::isinf(x)) return kInf;
  return c1 * std::pow(d, e.kernel_exp()) * std::exp(x);
}

double LowerBoundShell(const Measure& measure, int m, const Point& x,
                       const Point& pole, const Exponents& exponents) {
  CheckPole(x, pole, exponents.n());
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  if (measure.is_zero()) return 0.0;
  const double atom = measure.Growth(pole).atom_mass;
  const auto mass = [&](double r) {
    return std::max(0.0, measure.BallMass(pole, r) - atom);
  };
  return ShellBoundFormula(m, Distance(x, pole), ShellSum(mass, Distance(x, pole), exponents),
                           exponents);
}

double LowerBoundRadial(const Measure& measure, int m, const Point& x,
                        const Point& pole, const Exponents& exponents) {
  CheckPole(x, pole, exponents.n());
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  if (measure.is_zero()) return 0.0;
  const double d = Distance(x, pole);
  const double e = exponents.codim(), p = exponents.wolff_power();
  // Substituting r = 2t turns the half-radius integral into a truncated
  // Wolff potential at d/2.
  const double j = std::pow(2.0, -e * p) * PowerIntegral(measure, x, 0.0, 0.5 * d, e, p);
  return RadialBoundFormula(m, d, j, exponents);
}

double TheoremLowerBound(const Measure& measure, const Point& x,
                         const Point& pole, const Exponents& exponents,
                         double c1, double c2) {
  CheckPole(x, pole, exponents.n());
  if (!(c1 > 0) || !(c2 >= 0)) {
    throw std::invalid_argument("constants need c1 > 0 and c2 >= 0");
  }
  const double d = Distance(x, pole);
  if (measure.is_zero()) return TheoremBoundFormula(d, 0, 0, c1, c2, exponents);
  const double w = Wolff(measure, exponents, x, d);
  const double i = Riesz(measure, exponents.alpha() * exponents.s(), pole, d);
  return TheoremBoundFormula(d, w, i, c1, c2, exponents);
}

Exponents HessianParams(int k, int n) {
  if (k < 1 || 2 * k >= n) {
    throw std::invalid_argument("k-Hessian parameters need 1 <= k < n/2");
  }
  return Exponents(n, 2.0 * k / (k + 1.0), k + 1.0);
}

Exponents PlaplaceParams(double p, int n) {
  if (!(p > 1) || !(p < n)) {
    throw std::invalid_argument("p-Laplace parameters need 1 < p < n");
  }
  return Exponents(n, 1.0, p);
}

double PlaplaceGamma(double p, int n) {
  PlaplaceParams(p, n);
  return (p - 1.0) / (n - p) * std::pow(n * UnitSphereArea(n), -1.0 / (p - 1.0));
}

}  // namespace nlpot
