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

#include "nlpot/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/special_functions/beta.hpp>

#include "nlpot/quadrature.hpp"

namespace nlpot {
namespace {

constexpr int kSliceOrder = 10;

// Area of {0 < x < X, 0 < y < Y} inside the disk of radius rho, X, Y >= 0.
double QuadrantArea(double X, double Y, double rho) {
  X = std::min(X, rho);
  Y = std::min(Y, rho);
  if (X * X + Y * Y <= rho * rho) return X * Y;
  const double r2 = rho * rho;
  auto G = [&](double t) {
    const double c = std::clamp(t / rho, -1.0, 1.0);
    return 0.5 * (t * std::sqrt(std::max(0.0, r2 - t * t)) + r2 * std::asin(c));
  };
  const double xc = std::sqrt(std::max(0.0, r2 - Y * Y));
  return xc * Y + G(X) - G(xc);
}

double SignedQuadrant(double X, double Y, double rho) {
  const double a = QuadrantArea(std::fabs(X), std::fabs(Y), rho);
  return ((X < 0) != (Y < 0)) ? -a : a;
}

double RectDiskArea(double x1, double x2, double y1, double y2, double rho) {
  if (rho <= 0 || x2 <= x1 || y2 <= y1) return 0.0;
  const double a = SignedQuadrant(x2, y2, rho) - SignedQuadrant(x1, y2, rho) -
                   SignedQuadrant(x2, y1, rho) + SignedQuadrant(x1, y1, rho);
  return std::clamp(a, 0.0, (x2 - x1) * (y2 - y1));
}

double MinDist2(const double* lo, const double* hi, int n) {
  double s = 0;
  for (int j = 0; j < n; ++j) {
    double d = 0;
    if (lo[j] > 0) d = lo[j];
    else if (hi[j] < 0) d = -hi[j];
    s += d * d;
  }
  return s;
}

double MaxDist2(const double* lo, const double* hi, int n) {
  double s = 0;
  for (int j = 0; j < n; ++j) {
    const double d = std::max(std::fabs(lo[j]), std::fabs(hi[j]));
    s += d * d;
  }
  return s;
}

// Squared radii at which a slice of the first m coordinates changes shape:
// sums over subsets of squared face coordinates.
void CriticalRadii2(const double* lo, const double* hi, int m,
                    std::vector<double>& out) {
  out.assign(1, 0.0);
  for (int j = 0; j < m; ++j) {
    const std::size_t k = out.size();
    for (std::size_t i = 0; i < k; ++i) {
      out.push_back(out[i] + lo[j] * lo[j]);
      out.push_back(out[i] + hi[j] * hi[j]);
    }
  }
}

double Volume(const double* lo, const double* hi, int n, double r) {
  if (r <= 0) return 0.0;
  for (int j = 0; j < n; ++j) {
    if (!(hi[j] > lo[j])) return 0.0;
  }
  if (n == 1) return std::max(0.0, std::min(hi[0], r) - std::max(lo[0], -r));
  const double r2 = r * r;
  if (MinDist2(lo, hi, n) >= r2) return 0.0;
  if (MaxDist2(lo, hi, n) <= r2) {
    double v = 1;
    for (int j = 0; j < n; ++j) v *= hi[j] - lo[j];
    return v;
  }
  if (n == 2) return RectDiskArea(lo[0], hi[0], lo[1], hi[1], r);

  const double za = std::max(lo[n - 1], -r);
  const double zb = std::min(hi[n - 1], r);
  if (zb <= za) return 0.0;
  std::vector<double> crit;
  CriticalRadii2(lo, hi, n - 1, crit);
  std::vector<double> cuts{za, zb};
  for (double v2 : crit) {
    if (v2 <= 0 || v2 >= r2) continue;
    const double zc = std::sqrt(r2 - v2);
    if (zc > za && zc < zb) cuts.push_back(zc);
    if (-zc > za && -zc < zb) cuts.push_back(-zc);
  }
  if (0.0 > za && 0.0 < zb) cuts.push_back(0.0);
  std::sort(cuts.begin(), cuts.end());
  const GaussRule& rule = GaussLegendre(kSliceOrder);
  double total = 0;
  for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
    const double a = cuts[p], b = cuts[p + 1];
    if (b - a <= 0) continue;
    double piece = 0;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      // z = a + (b - a)(1 - cos t)/2 with t in [0, pi].
      const double t = 0.5 * std::numbers::pi * (rule.nodes[q] + 1.0);
      const double z = a + 0.5 * (b - a) * (1.0 - std::cos(t));
      const double jac = 0.5 * (b - a) * std::sin(t) * 0.5 * std::numbers::pi;
      const double rho = std::sqrt(std::max(0.0, r2 - z * z));
      piece += rule.weights[q] * jac * Volume(lo, hi, n - 1, rho);
    }
    total += piece;
  }
  double v = 1;
  for (int j = 0; j < n; ++j) v *= hi[j] - lo[j];
  return std::clamp(total, 0.0, v);
}

}  // namespace

double Norm(std::span<const double> v) {
  double s = 0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double Distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dimension mismatch");
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

Point Subtract(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dimension mismatch");
  Point out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Point Add(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dimension mismatch");
  Point out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

bool AllFinite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(),
                     [](double x) { return std::isfinite(x); });
}

double UnitBallVolume(int n) {
  return std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

double UnitSphereArea(int n) { return n * UnitBallVolume(n); }

double SphereCapFraction(int n, double h) {
  if (h < -1.0) return 1.0;
  if (h >= 1.0) return 0.0;
  if (n == 1) return 0.5;
  if (h == -1.0) return 1.0;
  const double a = 0.5 * (n - 1);
  return boost::math::ibeta(a, a, 0.5 * (1.0 - h));
}

double BoxMinDistance(std::span<const double> lo, std::span<const double> hi) {
  return std::sqrt(MinDist2(lo.data(), hi.data(), static_cast<int>(lo.size())));
}

double BoxMaxDistance(std::span<const double> lo, std::span<const double> hi) {
  return std::sqrt(MaxDist2(lo.data(), hi.data(), static_cast<int>(lo.size())));
}

double BoxVolume(std::span<const double> lo, std::span<const double> hi) {
  double v = 1;
  for (std::size_t j = 0; j < lo.size(); ++j) v *= std::max(0.0, hi[j] - lo[j]);
  return v;
}

double BoxBallVolume(std::span<const double> lo, std::span<const double> hi,
                     double r) {
  if (lo.size() != hi.size() || lo.empty()) {
    throw std::invalid_argument("box corners must share a positive dimension");
  }
  if (std::isinf(r)) return BoxVolume(lo, hi);
  return Volume(lo.data(), hi.data(), static_cast<int>(lo.size()), r);
}

double BoxBallVolume(std::span<const double> lo, std::span<const double> hi,
                     std::span<const double> center, double r) {
  Point a = Subtract(lo, center);
  Point b = Subtract(hi, center);
  return BoxBallVolume(a, b, r);
}

}  // namespace nlpot
