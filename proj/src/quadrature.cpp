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

#include "nlpot/quadrature.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace nlpot {
namespace {

GaussRule ComputeRule(int order) {
  GaussRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  for (int i = 0; i < order; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (order == 1) p0 = 1;
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-16) break;
    }
    rule.nodes[order - 1 - i] = x;
    rule.weights[order - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

struct SimpsonContext {
  const std::function<double(double)>* f;
  int max_depth;
  long max_evaluations;
  long evaluations = 0;
  bool converged = true;
  bool infinite = false;

  double Eval(double x) {
    ++evaluations;
    const double v = (*f)(x);
    if (std::isinf(v) && v > 0) infinite = true;
    return v;
  }
};

double Recurse(SimpsonContext& ctx, double a, double b, double fa, double fm,
               double fb, double whole, double eps, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = ctx.Eval(lm);
  const double frm = ctx.Eval(rm);
  if (ctx.infinite) return std::numeric_limits<double>::infinity();
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (std::fabs(delta) <= 15.0 * eps || !std::isfinite(delta)) {
    return left + right + delta / 15.0;
  }
  if (depth >= ctx.max_depth || m <= a || m >= b ||
      ctx.evaluations >= ctx.max_evaluations) {
    ctx.converged = false;
    return left + right + delta / 15.0;
  }
  return Recurse(ctx, a, m, fa, flm, fm, left, 0.5 * eps, depth + 1) +
         Recurse(ctx, m, b, fm, frm, fb, right, 0.5 * eps, depth + 1);
}

}  // namespace

const GaussRule& GaussLegendre(int order) {
  if (order < 1 || order > 512) {
    throw std::invalid_argument("Gauss-Legendre order must lie in [1, 512]");
  }
  static std::mutex mu;
  static std::map<int, std::unique_ptr<GaussRule>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[order];
  if (!slot) slot = std::make_unique<GaussRule>(ComputeRule(order));
  return *slot;
}

double GaussIntegrate(const std::function<double(double)>& f, double a,
                      double b, int order) {
  const GaussRule& rule = GaussLegendre(order);
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  double s = 0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    s += rule.weights[i] * f(mid + half * rule.nodes[i]);
  }
  return s * half;
}

double GaussIntegrateCosine(const std::function<double(double)>& f, double a,
                            double b, int order) {
  const GaussRule& rule = GaussLegendre(order);
  const double scale = 0.25 * std::numbers::pi * (b - a);
  double s = 0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double t = 0.5 * std::numbers::pi * (rule.nodes[i] + 1.0);
    const double x = a + 0.5 * (b - a) * (1.0 - std::cos(t));
    s += rule.weights[i] * std::sin(t) * f(x);
  }
  return s * scale;
}

QuadratureResult AdaptiveSimpson(const std::function<double(double)>& f,
                                 double a, double b,
                                 const QuadratureOptions& options) {
  QuadratureResult result;
  if (!(b > a)) return result;
  SimpsonContext ctx{&f, options.max_depth, options.max_evaluations};
  const int panels = std::max(1, options.initial_panels);
  const double h = (b - a) / panels;
  std::vector<double> xs(2 * panels + 1), fs(2 * panels + 1);
  for (int i = 0; i <= 2 * panels; ++i) {
    xs[i] = (i == 2 * panels) ? b : a + 0.5 * h * i;
    fs[i] = ctx.Eval(xs[i]);
    if (ctx.infinite) {
      result.value = std::numeric_limits<double>::infinity();
      result.evaluations = ctx.evaluations;
      return result;
    }
  }
  std::vector<double> whole(panels);
  double estimate = 0;
  for (int p = 0; p < panels; ++p) {
    whole[p] = (xs[2 * p + 2] - xs[2 * p]) / 6.0 *
               (fs[2 * p] + 4.0 * fs[2 * p + 1] + fs[2 * p + 2]);
    estimate += whole[p];
  }
  const double eps_total =
      std::max(options.abs_floor, options.rel_tol * std::fabs(estimate));
  double total = 0;
  for (int p = 0; p < panels; ++p) {
    const double eps = eps_total * (xs[2 * p + 2] - xs[2 * p]) / (b - a);
    total += Recurse(ctx, xs[2 * p], xs[2 * p + 2], fs[2 * p], fs[2 * p + 1],
                     fs[2 * p + 2], whole[p], eps, 0);
    if (ctx.infinite) break;
  }
  result.value = ctx.infinite ? std::numeric_limits<double>::infinity() : total;
  result.converged = ctx.converged;
  result.evaluations = ctx.evaluations;
  return result;
}

QuadratureResult AdaptiveCosine(const std::function<double(double)>& f,
                                double a, double b,
                                const QuadratureOptions& options) {
  if (!(b > a)) return {};
  const double half = 0.5 * (b - a);
  auto g = [&](double t) {
    const double w = std::sin(t);
    if (w <= 0) return 0.0;
    // Half-angle forms keep x strictly inside (a, b) where 1 - cos t and
    // 1 + cos t would round to zero.
    const double x = t < 0.5 * std::numbers::pi
                         ? a + 2.0 * half * std::pow(std::sin(0.5 * t), 2)
                         : b - 2.0 * half * std::pow(std::cos(0.5 * t), 2);
    const double v = f(x);
    return v == 0 ? 0.0 : v * w * half;
  };
  return AdaptiveSimpson(g, 0.0, std::numbers::pi, options);
}

}  // namespace nlpot
