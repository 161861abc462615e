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

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "nlpot/format.hpp"
#include "nlpot/potential.hpp"

namespace nlpot {
namespace {

constexpr int kMaxShellLevels = 2000;
constexpr double kShellCutoff = 1e-14;
// Rounding in the grid operator can make an exactly monotone step lose a
// few ulps; decreases smaller than this are not counted as violations.
constexpr double kMonotoneTolerance = 1e-12;

// j with 2^j <= d < 2^{j+1}.
int ShellIndex(double d) {
  int j = static_cast<int>(std::floor(std::log2(d)));
  if (std::ldexp(1.0, j) > d) --j;
  if (std::ldexp(1.0, j + 1) <= d) ++j;
  return j;
}

// sum_{l <= j} 2^{l w} mass(2^{l+1}), cut where terms drop below kShellCutoff
// of the running sum.
double PoleShellSum(const std::function<double(double)>& mass, int j, double w) {
  double sum = 0;
  for (int l = j; l > j - kMaxShellLevels; --l) {
    const double m = mass(std::ldexp(1.0, l + 1));
    if (m <= 0) break;
    const double term = std::pow(2.0, l * w) * m;
    sum += term;
    if (term < kShellCutoff * sum) break;
  }
  return sum;
}

bool HasAtoms(const Measure& m) {
  if (m.is_zero()) return false;
  if (m.is_atomic()) return true;
  if (m.kind() == MeasureKind::kSum) {
    for (const auto& p : m.parts()) {
      if (HasAtoms(p)) return true;
    }
  }
  return false;
}

double Factorial(int m) {
  double f = 1;
  for (int k = 2; k <= m; ++k) f *= k;
  return f;
}

SandwichReport EmptyReport(const SampleSet& samples, const SolverOptions& o,
                           std::string why) {
  SandwichReport r;
  r.seed = samples.seed;
  r.slack = o.slack;
  r.tolerance = o.tolerance;
  r.max_m = o.max_m;
  r.diagnostics = std::move(why);
  return r;
}

}  // namespace

double RieszMass(const Measure& measure, const Point& pole,
                 const Exponents& exponents) {
  if (measure.is_zero()) return 0.0;
  return Riesz(measure, exponents.alpha() * exponents.s(), pole, 1.0);
}

double SupersolutionEval(const SupersolutionSpec& spec, const Point& x,
                         bool* no_solution) {
  const Exponents& e = spec.exponents;
  if (!(spec.beta > 0) || !(spec.prefactor > 0)) {
    throw std::invalid_argument("beta and B must be positive");
  }
  if (static_cast<int>(x.size()) != e.n() || x == spec.pole) {
    throw std::invalid_argument("x must be a point of R^n other than the pole");
  }
  if (no_solution) *no_solution = false;
  const double d = Distance(x, spec.pole);
  const double base = spec.prefactor * std::pow(d, e.kernel_exp());
  if (spec.measure.is_zero()) return base;
  if (std::isinf(RieszMass(spec.measure, spec.pole, e))) {
    if (no_solution) *no_solution = true;
    return kInf;
  }
  const double shells = PoleShellSum(
      [&](double r) { return spec.measure.BallMass(spec.pole, r); },
      ShellIndex(d), e.alpha() * e.s() - e.n());
  const double local = Wolff(spec.measure, e, x, d);
  const double exponent = spec.beta * (shells + local);
  return std::isinf(exponent) ? kInf : base * std::exp(exponent);
}

std::string ToString(Equivalence verdict) {
  switch (verdict) {
    case Equivalence::kEquivalent:
      return "equivalent";
    case Equivalence::kNotEquivalent:
      return "not-equivalent";
    case Equivalence::kUndetermined:
      return "undetermined";
  }
  return "undetermined";
}

// ---------------------------------------------------------------------------
// FundsolSolver

FundsolSolver::FundsolSolver(const Measure& measure, const Exponents& exponents,
                             const SampleSet& samples,
                             const SolverOptions& options)
    : FundsolSolver(OperatorGrid(measure, exponents, samples.pole,
                                 samples.points, options.grid),
                    samples, options) {}

FundsolSolver::FundsolSolver(OperatorGrid grid, const SampleSet& samples,
                             const SolverOptions& options)
    : grid_(std::move(grid)), samples_(samples), options_(options) {
  if (samples_.size() == 0) throw std::invalid_argument("no sample points");
  if (grid_.nodes() != grid_.cells() + samples_.size() + 1) {
    throw std::invalid_argument("grid was not built on this sample set");
  }
}

std::vector<double> FundsolSolver::F0() const {
  const double kappa = grid_.exponents().kernel_exp();
  std::vector<double> f(grid_.nodes());
  for (int v = 0; v < grid_.nodes(); ++v) {
    const double d = Distance(grid_.node(v), grid_.pole());
    f[v] = d == 0 ? kInf : std::pow(d, kappa);
  }
  return f;
}

std::vector<double> FundsolSolver::Supersolution(double beta) const {
  const Exponents& e = grid_.exponents();
  const double w = e.alpha() * e.s() - e.n();
  std::map<int, double> shells;
  std::vector<double> v(grid_.nodes(), kInf);
  for (int node = 0; node < grid_.nodes(); ++node) {
    const double d = Distance(grid_.node(node), grid_.pole());
    if (d == 0) continue;
    const int j = ShellIndex(d);
    auto it = shells.find(j);
    if (it == shells.end()) {
      const double s = PoleShellSum(
          [&](double r) { return grid_.BallMass(grid_.pole(), r); }, j, w);
      it = shells.emplace(j, s).first;
    }
    const double exponent = beta * (it->second + grid_.Wolff(node, d));
    v[node] = options_.prefactor * std::pow(d, e.kernel_exp()) * std::exp(exponent);
  }
  return v;
}

double FundsolSolver::RieszMass() const {
  const Exponents& e = grid_.exponents();
  return grid_.Riesz(grid_.pole_node(), e.alpha() * e.s(), 1.0);
}

double FundsolSolver::FitCHat() const {
  double mass = 0;
  std::vector<double> moments(options_.moment_order, 0.0);
  for (int i = 0; i < grid_.cells(); ++i) {
    const double w = grid_.Wolff(i, kInf);
    mass += grid_.cell_mass(i);
    double power = 1;
    for (int m = 0; m < options_.moment_order; ++m) {
      power *= w;
      moments[m] += grid_.cell_mass(i) * power;
    }
  }
  double c_hat = 0;
  if (mass <= 0) return c_hat;
  for (int m = 1; m <= options_.moment_order; ++m) {
    c_hat = std::max(c_hat,
                     std::pow(moments[m - 1] / (Factorial(m) * mass), 1.0 / m));
  }
  return c_hat;
}

double FundsolSolver::GrowthConstant() const {
  return grid_.GrowthConstant(grid_.exponents().codim());
}

SupersolutionCheck FundsolSolver::Verify(const std::vector<double>& v) const {
  if (static_cast<int>(v.size()) != grid_.nodes()) {
    throw std::invalid_argument("supersolution needs one value per node");
  }
  const std::vector<double> nv = grid_.ApplyN(v);
  const std::vector<double> f0 = F0();
  SupersolutionCheck check;
  check.c0 = kInf;
  check.c0_admissible = kInf;
  bool any_positive = false;
  int usable = 0;
  for (int j = 0; j < samples_.size(); ++j) {
    const int node = sample_node(j);
    if (std::isinf(v[node]) && std::isinf(nv[node])) {
      check.flagged.push_back(j);
      continue;
    }
    ++usable;
    if (nv[node] <= 0) continue;
    const double ratio = v[node] / nv[node];
    if (ratio < check.c0) {
      check.c0 = ratio;
      check.worst = j;
    }
  }
  if (usable == 0) throw std::runtime_error("every sample point is degenerate");
  for (int node = 0; node < grid_.pole_node(); ++node) {
    if (nv[node] > 0) any_positive = true;
    if (!(nv[node] > 0) || (std::isinf(v[node]) && std::isinf(nv[node]))) {
      continue;
    }
    check.c0_admissible = std::min(check.c0_admissible, (v[node] - f0[node]) / nv[node]);
  }
  check.unconstrained = !any_positive;
  if (check.worst < 0 && usable > 0) {
    for (int j = 0; j < samples_.size() && check.worst < 0; ++j) {
      if (std::find(check.flagged.begin(), check.flagged.end(), j) ==
          check.flagged.end()) {
        check.worst = j;
      }
    }
  }
  // Sampled decay of v: the largest value on each of the three outermost
  // shells must strictly decrease.
  const int shells = static_cast<int>(samples_.shell_radii.size());
  if (shells >= 3) {
    std::vector<double> top(3, 0.0);
    for (int j = 0; j < samples_.size(); ++j) {
      const int k = samples_.shell[j] - (shells - 3);
      if (k >= 0) top[k] = std::max(top[k], v[sample_node(j)]);
    }
    check.decays = top[1] < top[0] && top[2] < top[1];
  }
  return check;
}

ConstantsLedger FundsolSolver::Constants() const {
  const Exponents& e = grid_.exponents();
  ConstantsLedger c;
  c.c_sigma = GrowthConstant();
  c.c_hat = FitCHat();
  c.b_riesz = RieszMass();
  if (c.c_hat > 0 && c.c_sigma > 0) {
    c.beta = 1.0 / (2.0 * c.c_hat * std::pow(c.c_sigma, e.wolff_power()));
  } else {
    // Zero measure: v does not depend on beta.
    c.beta = 1.0;
  }
  for (c.halvings = 0;; ++c.halvings) {
    const SupersolutionCheck check = Verify(Supersolution(c.beta));
    c.c0 = check.c0;
    c.c0_admissible = check.c0_admissible;
    if (c.c0_admissible > 0 || c.halvings == options_.max_halvings) break;
    c.beta *= 0.5;
  }
  if (c.c0_admissible > 0) {
    c.c0_used = std::isinf(c.c0_admissible) ? 1.0 : 0.5 * c.c0_admissible;
  }
  return c;
}

std::vector<double> FundsolSolver::PicardNodes(double c0,
                                               PicardResult* result) const {
  if (!(c0 > 0) || std::isinf(c0)) {
    throw std::invalid_argument("Picard needs a finite C0 > 0");
  }
  const std::vector<double> f0 = F0();
  const int pole = grid_.pole_node();
  std::vector<double> u = f0;
  PicardResult out;
  out.c0 = c0;
  IterationLedger& ledger = out.ledger;
  for (int m = 1; m <= options_.max_m; ++m) {
    const std::vector<double> nu = grid_.ApplyN(u);
    std::vector<double> next(u.size());
    double change = 0, largest = 0;
    int largest_at = -1;
    for (int v = 0; v < grid_.nodes(); ++v) {
      next[v] = v == pole ? kInf : c0 * nu[v] + f0[v];
      if (v == pole) continue;
      change = std::max(change, std::abs(next[v] - u[v]) / next[v]);
      if (next[v] < u[v] * (1 - kMonotoneTolerance)) ledger.monotone = false;
      if (!(next[v] <= options_.divergence_cap) && next[v] > largest) {
        largest = next[v];
        largest_at = v;
      }
    }
    std::vector<double> at(samples_.size());
    for (int j = 0; j < samples_.size(); ++j) at[j] = next[sample_node(j)];
    ledger.history.push_back(at);
    ledger.values = at;
    ledger.m = m;
    u = std::move(next);
    if (largest_at >= 0) {
      // Report the first sample past the cap, or the worst sample when only
      // cell centres have blown up.
      int first = -1, worst = 0;
      for (int j = 0; j < samples_.size(); ++j) {
        if (first < 0 && !(at[j] <= options_.divergence_cap)) first = j;
        if (at[j] > at[worst]) worst = j;
      }
      ledger.diverged_at = first >= 0 ? first : worst;
      break;
    }
    if (change < options_.tolerance) {
      out.converged = true;
      break;
    }
  }
  out.limit = ledger.values;
  if (!ledger.diverged_at) {
    const std::vector<double> nu = grid_.ApplyN(u);
    out.residual = 0;
    for (int j = 0; j < samples_.size(); ++j) {
      const int v = sample_node(j);
      out.residual = std::max(out.residual, std::abs(u[v] - (c0 * nu[v] + f0[v])) / u[v]);
    }
  }
  if (result) *result = std::move(out);
  return u;
}

PicardResult FundsolSolver::Picard(double c0) const {
  PicardResult result;
  PicardNodes(c0, &result);
  return result;
}

SandwichReport FundsolSolver::Sandwich() const {
  SandwichReport report = EmptyReport(samples_, options_, "");
  const Exponents& e = grid_.exponents();
  report.constants = Constants();
  ConstantsLedger& c = report.constants;
  const std::vector<double> v = Supersolution(c.beta);
  report.decays = Verify(v).decays;
  if (!(c.c0_used > 0)) {
    report.diagnostics = "no beta gave C0 > 0";
    return report;
  }
  report.constructible = true;
  PicardResult picard;
  const std::vector<double> u = PicardNodes(c.c0_used, &picard);
  report.converged = picard.converged;
  report.monotone = picard.ledger.monotone;
  report.iterations = picard.ledger.m;
  report.residual = picard.residual;

  const int count = samples_.size();
  const double order = e.alpha() * e.s();
  std::vector<double> f0(count), potential(count), up(count);
  report.rows.resize(count);
  for (int j = 0; j < count; ++j) {
    SandwichRow& row = report.rows[j];
    const int node = sample_node(j);
    row.x = samples_.points[j];
    row.radius = samples_.radii[j];
    row.picard = u[node];
    row.upper = v[node];
    row.local_wolff = grid_.Wolff(node, row.radius);
    row.pole_riesz = grid_.Riesz(grid_.pole_node(), order, row.radius);
    f0[j] = std::pow(row.radius, e.kernel_exp());
    potential[j] = row.local_wolff + row.pole_riesz;
  }

  // Sweep c2; for each, c1 is the largest constant keeping the bound below
  // the limit, and the pair whose bound hugs the limit best wins.
  double best_score = -kInf;
  for (int k = 0; k < options_.c2_count; ++k) {
    const double t = options_.c2_count > 1 ? double(k) / (options_.c2_count - 1) : 0.0;
    const double c2 = options_.c2_min * std::pow(options_.c2_max / options_.c2_min, t);
    double c1 = kInf;
    for (int j = 0; j < count; ++j) {
      c1 = std::min(c1, report.rows[j].picard / (f0[j] * std::exp(c2 * potential[j])));
    }
    if (!(c1 > 0) || std::isinf(c1)) continue;
    double score = 0;
    for (int j = 0; j < count; ++j) {
      score += std::log(c1 * f0[j] * std::exp(c2 * potential[j]) / report.rows[j].picard);
    }
    const bool better =
        score > best_score ||
        (score == best_score && (c1 > c.c1 || (c1 == c.c1 && c2 > c.c2)));
    if (better) {
      best_score = score;
      c.c1 = c1;
      c.c2 = c2;
    }
  }
  if (!(c.c1 > 0)) {
    report.diagnostics = "no positive lower-bound constant fits the limit";
    return report;
  }

  bool all = true;
  for (auto& row : report.rows) {
    row.lower = TheoremBoundFormula(row.radius, row.local_wolff, row.pole_riesz,
                                    c.c1, c.c2, e);
    row.pass = std::isfinite(row.picard) &&
               row.lower <= row.picard * (1 + options_.slack) &&
               row.picard <= row.upper * (1 + options_.slack);
    all = all && row.pass;
  }
  report.pass = all && report.converged;
  if (!report.converged) {
    report.diagnostics = picard.ledger.diverged_at
                             ? "Picard iteration diverged at sample " +
                                   std::to_string(*picard.ledger.diverged_at)
                             : "Picard iteration did not converge";
  } else if (!all) {
    report.diagnostics = "unordered sample points";
  }
  return report;
}

EquivalenceReport FundsolSolver::Check() const {
  const Exponents& e = grid_.exponents();
  EquivalenceReport r;
  const bool riesz = e.s() <= 2;
  r.potential = riesz ? "riesz" : "wolff";
  for (int node = 0; node < grid_.nodes(); ++node) {
    const double value = riesz ? grid_.Riesz(node, e.alpha() * e.s(), kInf)
                               : grid_.Wolff(node, kInf);
    r.sup = std::max(r.sup, value);
  }
  const SandwichReport s = Sandwich();
  r.min_ratio = kInf;
  for (const auto& row : s.rows) {
    const double ratio = row.upper / row.lower;
    r.max_ratio = std::max(r.max_ratio, ratio);
    r.min_ratio = std::min(r.min_ratio, ratio);
  }
  if (s.rows.empty()) r.max_ratio = r.min_ratio = kInf;
  const bool bounded = std::isfinite(r.sup) && s.pass && std::isfinite(r.max_ratio);
  r.verdict = bounded ? Equivalence::kEquivalent : Equivalence::kNotEquivalent;
  if (!bounded) r.diagnostics = s.diagnostics.empty() ? "unbounded potential" : s.diagnostics;
  return r;
}

// ---------------------------------------------------------------------------
// Free functions

SupersolutionCheck VerifySupersolution(const SupersolutionSpec& spec,
                                       const SampleSet& samples,
                                       const SolverOptions& options) {
  if (samples.size() == 0) throw std::invalid_argument("no sample points");
  if (HasAtoms(spec.measure)) {
    // v is +inf at every atom (its local Wolff term diverges there), so N(v)
    // is +inf everywhere and no positive C0 exists.
    SupersolutionCheck check;
    for (int j = 0; j < samples.size(); ++j) {
      if (std::isinf(SupersolutionEval(spec, samples.points[j]))) {
        check.flagged.push_back(j);
      } else if (check.worst < 0) {
        check.worst = j;
      }
    }
    if (check.worst < 0) throw std::runtime_error("every sample point is degenerate");
    return check;
  }
  SolverOptions o = options;
  o.prefactor = spec.prefactor;
  const FundsolSolver solver(spec.measure, spec.exponents, samples, o);
  return solver.Verify(solver.Supersolution(spec.beta));
}

PicardResult PicardIterate(const Measure& measure, double c0,
                           const Exponents& exponents, const SampleSet& samples,
                           const SolverOptions& options) {
  if (!(c0 > 0) || std::isinf(c0)) {
    throw std::invalid_argument("Picard needs a finite C0 > 0");
  }
  if (!measure.is_atomic()) {
    return FundsolSolver(measure, exponents, samples, options).Picard(c0);
  }
  for (const auto& a : measure.atoms()) {
    if (a.mass > 0 && a.x != samples.pole && samples.IndexOf(a.x) < 0) {
      throw std::invalid_argument("sample set must contain every atom");
    }
  }
  // Exact iteration: u is only needed at the atoms, which are samples.
  const double kappa = exponents.kernel_exp();
  const int count = samples.size();
  std::vector<double> f0(count), u(count);
  for (int j = 0; j < count; ++j) f0[j] = u[j] = std::pow(samples.radii[j], kappa);
  PicardResult out;
  out.c0 = c0;
  IterationLedger& ledger = out.ledger;
  std::vector<double> nu(count);
  const auto apply = [&](const std::vector<double>& field) {
    const FieldFunction f = FieldFunction::Supersolution([&](const Point& x) {
      if (x == samples.pole) return kInf;
      return field[samples.IndexOf(x)];
    });
    for (int j = 0; j < count; ++j) {
      nu[j] = ApplyN(measure, f, samples.points[j], exponents);
    }
  };
  for (int m = 1; m <= options.max_m; ++m) {
    apply(u);
    std::vector<double> next(count);
    double change = 0;
    for (int j = 0; j < count; ++j) {
      next[j] = c0 * nu[j] + f0[j];
      change = std::max(change, std::abs(next[j] - u[j]) / next[j]);
      if (next[j] < u[j] * (1 - kMonotoneTolerance)) ledger.monotone = false;
      if (!ledger.diverged_at && !(next[j] <= options.divergence_cap)) {
        ledger.diverged_at = j;
      }
    }
    ledger.history.push_back(next);
    ledger.values = next;
    ledger.m = m;
    u = std::move(next);
    if (ledger.diverged_at) break;
    if (change < options.tolerance) {
      out.converged = true;
      break;
    }
  }
  out.limit = u;
  if (!ledger.diverged_at) {
    apply(u);
    out.residual = 0;
    for (int j = 0; j < count; ++j) {
      out.residual = std::max(out.residual, std::abs(u[j] - (c0 * nu[j] + f0[j])) / u[j]);
    }
  }
  return out;
}

SandwichReport Sandwich(const Measure& measure, const Exponents& exponents,
                        const SampleSet& samples, const SolverOptions& options) {
  if (HasAtoms(measure)) {
    SandwichReport r = EmptyReport(
        samples, options,
        "measure has atoms: the Wolff potential is +inf at each atom, so no "
        "C0 > 0 exists");
    const SupersolutionSpec spec{1.0, options.prefactor, samples.pole, exponents,
                                 measure};
    for (int j = 0; j < samples.size(); ++j) {
      SandwichRow row;
      row.x = samples.points[j];
      row.radius = samples.radii[j];
      row.picard = kInf;
      row.upper = SupersolutionEval(spec, row.x);
      r.rows.push_back(row);
    }
    return r;
  }
  if (std::isinf(measure.SupportBall().radius)) {
    return EmptyReport(samples, options,
                       "unbounded support cannot be discretised");
  }
  return FundsolSolver(measure, exponents, samples, options).Sandwich();
}

EquivalenceReport EquivalenceCheck(const Measure& measure,
                                   const Exponents& exponents,
                                   const SampleSet& samples,
                                   const SolverOptions& options) {
  EquivalenceReport r;
  r.potential = exponents.s() <= 2 ? "riesz" : "wolff";
  if (HasAtoms(measure)) {
    r.verdict = Equivalence::kNotEquivalent;
    r.sup = r.max_ratio = kInf;
    r.min_ratio = kInf;
    r.diagnostics = "potential is +inf at every atom";
    return r;
  }
  if (std::isinf(measure.SupportBall().radius)) {
    r.verdict = Equivalence::kUndetermined;
    r.sup = r.max_ratio = r.min_ratio = kInf;
    r.diagnostics = "unbounded support without a decay certificate";
    return r;
  }
  return FundsolSolver(measure, exponents, samples, options).Check();
}

std::string SandwichCsv(const SandwichReport& report) {
  std::ostringstream out;
  const int n = report.rows.empty() ? 0 : static_cast<int>(report.rows[0].x.size());
  for (int j = 0; j < n; ++j) out << 'x' << j << ',';
  out << "radius,lower,picard,upper,ratio,verdict\n";
  for (const auto& row : report.rows) {
    for (double c : row.x) out << FormatDouble(c) << ',';
    out << FormatDouble(row.radius) << ',' << FormatDouble(row.lower) << ','
        << FormatDouble(row.picard) << ',' << FormatDouble(row.upper) << ','
        << FormatDouble(row.upper / row.lower) << ','
        << (row.pass ? "pass" : "fail") << '\n';
  }
  const ConstantsLedger& c = report.constants;
  const auto line = [&](const char* key, const std::string& value) {
    out << "# " << key << '=' << value << '\n';
  };
  line("verdict", report.pass ? "pass" : "fail");
  line("constructible", report.constructible ? "1" : "0");
  line("converged", report.converged ? "1" : "0");
  line("monotone", report.monotone ? "1" : "0");
  line("decay", report.decays ? "sampled" : "not-observed");
  line("iterations", std::to_string(report.iterations));
  line("residual", FormatDouble(report.residual));
  line("C_sigma", FormatDouble(c.c_sigma));
  line("C_hat", FormatDouble(c.c_hat));
  line("beta", FormatDouble(c.beta));
  line("halvings", std::to_string(c.halvings));
  line("C0", std::isinf(c.c0) ? "unconstrained" : FormatDouble(c.c0));
  line("C0_admissible", FormatDouble(c.c0_admissible));
  line("C0_used", FormatDouble(c.c0_used));
  line("B_riesz", FormatDouble(c.b_riesz));
  line("c1", FormatDouble(c.c1));
  line("c2", FormatDouble(c.c2));
  line("seed", std::to_string(report.seed));
  line("slack", FormatDouble(report.slack));
  line("tolerance", FormatDouble(report.tolerance));
  line("maxM", std::to_string(report.max_m));
  if (!report.diagnostics.empty()) line("diagnostics", report.diagnostics);
  return out.str();
}

}  // namespace nlpot
