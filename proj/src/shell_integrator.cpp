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

// Ball masses of radial densities.  Both integrators work over spheres
// S(c, t) about the density centre c and substitute u = t^(n + gamma), which
// turns the radial weight t^(n + gamma - 1) dt into du / (n + gamma).

#include <algorithm>
#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "measure_node.hpp"
#include "nlpot/quadrature.hpp"

namespace nlpot {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kArcGaussOrder = 16;
constexpr int kRingGaussOrder = 24;

// The constraint theta . w > (a t^2 + b) / (2 t) on unit directions theta.
struct Constraint {
  Point w;
  double a = 0.0;
  double b = 0.0;
  double Threshold(double t) const { return (a * t * t + b) / (2.0 * t); }
};

using Arcs = std::vector<std::pair<double, double>>;

// Arcs of phi in [0, 2 pi) with rho cos(phi - phase) > k.
void ArcFor(double rho, double phase, double k, Arcs& out) {
  out.clear();
  if (rho <= 0) {
    if (k < 0) out.emplace_back(0.0, kTwoPi);
    return;
  }
  if (k <= -rho) {
    out.emplace_back(0.0, kTwoPi);
    return;
  }
  if (k >= rho) return;
  const double half = std::acos(k / rho);
  double start = std::fmod(phase - half, kTwoPi);
  if (start < 0) start += kTwoPi;
  const double end = start + 2.0 * half;
  if (end <= kTwoPi) {
    out.emplace_back(start, end);
  } else {
    out.emplace_back(0.0, end - kTwoPi);
    out.emplace_back(start, kTwoPi);
  }
}

void Intersect(const Arcs& x, const Arcs& y, Arcs& out) {
  out.clear();
  std::size_t i = 0, j = 0;
  while (i < x.size() && j < y.size()) {
    const double lo = std::max(x[i].first, y[j].first);
    const double hi = std::min(x[i].second, y[j].second);
    if (hi > lo) out.emplace_back(lo, hi);
    if (x[i].second < y[j].second) {
      ++i;
    } else {
      ++j;
    }
  }
}

class ShellProblem {
 public:
  ShellProblem(const Measure::Node& node, const Point& x, double r)
      : node_(node), n_(node.dim), c_(node.radial.center) {
    t_hi_ = node.radial.cutoff;
    AddBall(x, r, /*is_main=*/true);
    for (const auto& clip : node.clips) {
      if (clip.is_ball) {
        AddBall(clip.center, clip.radius, false);
      } else {
        for (int j = 0; j < n_; ++j) {
          Point e(n_, 0.0);
          e[j] = 1.0;
          cons_.push_back({e, 0.0, 2.0 * (clip.lo[j] - c_[j])});
          e[j] = -1.0;
          cons_.push_back({e, 0.0, 2.0 * (c_[j] - clip.hi[j])});
          breaks_.push_back(std::fabs(clip.lo[j] - c_[j]));
          breaks_.push_back(std::fabs(clip.hi[j] - c_[j]));
        }
        const Point lo = Subtract(clip.lo, c_);
        const Point hi = Subtract(clip.hi, c_);
        t_lo_ = std::max(t_lo_, BoxMinDistance(lo, hi));
        t_hi_ = std::min(t_hi_, BoxMaxDistance(lo, hi));
        AddCorners(lo, hi);
      }
    }
    BuildFrame();
  }

  double Integrate() {
    if (!(t_hi_ > t_lo_)) return 0.0;
    const double g = node_.radial.exponent;
    const double a = n_ + g;
    const double coef = node_.radial.coefficient;
    std::vector<double> cuts{t_lo_};
    for (double b : breaks_) {
      if (b > t_lo_ && b < t_hi_) cuts.push_back(b);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    QuadratureOptions opts;
    opts.rel_tol = 1e-8;
    opts.abs_floor = 0.0;
    opts.max_depth = 24;
    opts.max_evaluations = 1500;
    double total = 0;
    auto in_u = [&](double u) { return SphereIntegral(std::pow(u, 1.0 / a)); };
    auto in_t = [&](double t) { return SphereIntegral(t) * std::pow(t, a - 1.0); };
    for (std::size_t i = 0; i < cuts.size(); ++i) {
      const double t0 = cuts[i];
      const double t1 = (i + 1 < cuts.size()) ? cuts[i + 1] : t_hi_;
      if (std::isinf(t1)) {
        if (node_.weights.empty()) return kInf;
        // Weighted tail: t = t0 e^v.
        const double base = std::max(t0, 1.0);
        if (base > t0) {
          total += coef / a *
                   AdaptiveCosine(in_u, std::pow(t0, a), std::pow(base, a), opts)
                       .value;
        }
        auto tail = [&](double v) {
          const double t = base * std::exp(v);
          return std::pow(t, a) * SphereIntegral(t);
        };
        total += coef * AdaptiveSimpson(tail, 0.0, 80.0, opts).value;
        break;
      }
      if (t0 > 0.25 * t1) {
        // Thin shell: stay in t, where the interval keeps its relative width.
        total += coef * AdaptiveCosine(in_t, t0, t1, opts).value;
      } else {
        total += coef / a *
                 AdaptiveCosine(in_u, std::pow(t0, a), std::pow(t1, a), opts).value;
      }
      if (std::isinf(total)) return kInf;
    }
    return total;
  }

 private:
  void AddBall(const Point& q, double radius, bool is_main) {
    if (std::isinf(radius)) return;
    const Point w = Subtract(q, c_);
    const double d = Norm(w);
    if (d <= 1e-15 * radius) {
      t_hi_ = std::min(t_hi_, radius);
      return;
    }
    t_lo_ = std::max(t_lo_, d - radius);
    t_hi_ = std::min(t_hi_, d + radius);
    breaks_.push_back(std::fabs(d - radius));
    if (is_main && n_ == 3) {
      cap_axis_ = w;
      cap_r_ = radius;
      cap_d_ = d;
      has_cap_ = true;
      return;
    }
    cons_.push_back({w, 1.0, d * d - radius * radius});
  }

  void AddCorners(const Point& lo, const Point& hi) {
    for (int mask = 0; mask < (1 << n_); ++mask) {
      double s = 0;
      for (int j = 0; j < n_; ++j) {
        const double v = (mask & (1 << j)) ? hi[j] : lo[j];
        s += v * v;
      }
      breaks_.push_back(std::sqrt(s));
    }
  }

  // Orthonormal frame with e3 along the cap axis for the three-dimensional
  // case; constraint normals are stored in frame coordinates.
  void BuildFrame() {
    if (n_ != 3) return;
    Point e3 = has_cap_ ? cap_axis_ : Point{0, 0, 1};
    const double l = Norm(e3);
    for (double& v : e3) v /= l;
    Point helper = std::fabs(e3[0]) < 0.9 ? Point{1, 0, 0} : Point{0, 1, 0};
    Point e1(3), e2(3);
    const double dot = helper[0] * e3[0] + helper[1] * e3[1] + helper[2] * e3[2];
    for (int j = 0; j < 3; ++j) e1[j] = helper[j] - dot * e3[j];
    const double l1 = Norm(e1);
    for (double& v : e1) v /= l1;
    e2 = {e3[1] * e1[2] - e3[2] * e1[1], e3[2] * e1[0] - e3[0] * e1[2],
          e3[0] * e1[1] - e3[1] * e1[0]};
    frame_ = {e1, e2, e3};
    for (auto& con : cons_) {
      Point f(3);
      for (int k = 0; k < 3; ++k) {
        f[k] = frame_[k][0] * con.w[0] + frame_[k][1] * con.w[1] +
               frame_[k][2] * con.w[2];
      }
      con.w = f;
    }
  }

  double Weight(const Point& y) const {
    double w = 1.0;
    for (const auto& sw : node_.weights) {
      const double v = (*sw.f)(y);
      if (!(v >= 0)) {
        throw std::domain_error("reweight: weight is negative or NaN");
      }
      w *= (sw.power == 0) ? 1.0 : std::pow(v, sw.power);
    }
    return w;
  }

  // Integral over the unit sphere of the indicator of all constraints times
  // the weights, at sphere radius t.
  double SphereIntegral(double t) const {
    if (!(t > 0)) return 0.0;
    switch (n_) {
      case 1:
        return Sphere1(t);
      case 2:
        return Sphere2(t);
      case 3:
        return Sphere3(t);
      default:
        throw std::invalid_argument(
            "clipped or reweighted radial densities need n <= 3");
    }
  }

  double Sphere1(double t) const {
    double s = 0;
    for (double theta : {1.0, -1.0}) {
      bool ok = true;
      for (const auto& con : cons_) {
        if (!(theta * con.w[0] > con.Threshold(t))) {
          ok = false;
          break;
        }
      }
      if (ok) s += node_.weights.empty() ? 1.0 : Weight({c_[0] + theta * t});
    }
    return s;
  }

  double ArcIntegral(const Arcs& arcs,
                     const std::function<Point(double)>& direction,
                     double t) const {
    double s = 0;
    if (node_.weights.empty()) {
      for (const auto& [lo, hi] : arcs) s += hi - lo;
      return s;
    }
    for (const auto& [lo, hi] : arcs) {
      const int pieces = std::max(1, static_cast<int>(std::ceil((hi - lo) / 0.8)));
      const double step = (hi - lo) / pieces;
      for (int k = 0; k < pieces; ++k) {
        s += GaussIntegrate(
            [&](double phi) {
              Point y = direction(phi);
              for (int j = 0; j < n_; ++j) y[j] = c_[j] + t * y[j];
              return Weight(y);
            },
            lo + k * step, lo + (k + 1) * step, kArcGaussOrder);
      }
    }
    return s;
  }

  double Sphere2(double t) const {
    Arcs acc{{0.0, kTwoPi}}, arc, tmp;
    for (const auto& con : cons_) {
      ArcFor(Norm(con.w), std::atan2(con.w[1], con.w[0]), con.Threshold(t), arc);
      Intersect(acc, arc, tmp);
      std::swap(acc, tmp);
      if (acc.empty()) return 0.0;
    }
    return ArcIntegral(
        acc, [](double phi) { return Point{std::cos(phi), std::sin(phi)}; }, t);
  }

  double Sphere3(double t) const {
    double psi_max = std::numbers::pi;
    double cap_area = 0.0;  // 1 - cos(psi_max)
    if (has_cap_) {
      // 1 - h in factored form; the expanded (t^2 + d^2 - r^2) / (2 t d)
      // cancels badly for balls much smaller than their distance d.
      const double r = cap_r_, d = cap_d_;
      const double one_minus_h = (r - t + d) * (r + t - d) / (2.0 * t * d);
      if (one_minus_h <= 0) return 0.0;
      if (one_minus_h >= 2) {
        cap_area = 2.0;
      } else {
        cap_area = one_minus_h;
        psi_max = 2.0 * std::asin(std::sqrt(0.5 * one_minus_h));
      }
    } else {
      cap_area = 2.0;
    }
    auto ring = [&](double psi) {
      const double sp = std::sin(psi), cp = std::cos(psi);
      Arcs acc{{0.0, kTwoPi}}, arc, tmp;
      for (const auto& con : cons_) {
        const double rho = sp * std::hypot(con.w[0], con.w[1]);
        ArcFor(rho, std::atan2(con.w[1], con.w[0]),
               con.Threshold(t) - cp * con.w[2], arc);
        Intersect(acc, arc, tmp);
        std::swap(acc, tmp);
        if (acc.empty()) return 0.0;
      }
      const auto dir = [&](double phi) {
        const double a1 = sp * std::cos(phi), a2 = sp * std::sin(phi);
        Point y(3);
        for (int j = 0; j < 3; ++j) {
          y[j] = a1 * frame_[0][j] + a2 * frame_[1][j] + cp * frame_[2][j];
        }
        return y;
      };
      return sp * ArcIntegral(acc, dir, t);
    };
    if (cons_.empty() && node_.weights.empty()) {
      return kTwoPi * cap_area;
    }
    // Between consecutive cuts the ring integral is smooth apart from
    // square-root behaviour at the ends, which the cosine rule absorbs.
    std::vector<double> cuts{0.0, psi_max};
    auto add_cut = [&](double psi) {
      if (psi > 0 && psi < psi_max) cuts.push_back(psi);
    };
    for (const auto& con : cons_) {
      const double R = Norm(con.w);
      const double k = con.Threshold(t);
      if (!(R > 0) || std::fabs(k) >= R) continue;
      const double phi0 = std::atan2(std::hypot(con.w[0], con.w[1]), con.w[2]);
      const double spread = std::acos(k / R);
      for (double v : {phi0 + spread, phi0 - spread, -phi0 + spread,
                       -phi0 - spread}) {
        add_cut(std::fabs(v));
      }
    }
    for (std::size_t i = 0; i < cons_.size(); ++i) {
      for (std::size_t j = i + 1; j < cons_.size(); ++j) {
        CircleCrossings(cons_[i], cons_[j], t, add_cut);
      }
    }
    std::sort(cuts.begin(), cuts.end());
    double total = 0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      if (cuts[i + 1] - cuts[i] < 1e-15) continue;
      total += GaussIntegrateCosine(ring, cuts[i], cuts[i + 1], kRingGaussOrder);
    }
    return total;
  }

  // Polar angles of the points where the boundary circles of two
  // constraints meet on the unit sphere.
  template <typename Fn>
  static void CircleCrossings(const Constraint& p, const Constraint& q,
                              double t, Fn&& emit) {
    const double lp = Norm(p.w), lq = Norm(q.w);
    if (!(lp > 0) || !(lq > 0)) return;
    double u1[3], u2[3];
    for (int j = 0; j < 3; ++j) {
      u1[j] = p.w[j] / lp;
      u2[j] = q.w[j] / lq;
    }
    const double c1 = p.Threshold(t) / lp, c2 = q.Threshold(t) / lq;
    const double d = u1[0] * u2[0] + u1[1] * u2[1] + u1[2] * u2[2];
    const double det = 1.0 - d * d;
    if (det < 1e-14) return;
    const double a = (c1 - c2 * d) / det, b = (c2 - c1 * d) / det;
    double base[3], cross[3];
    for (int j = 0; j < 3; ++j) base[j] = a * u1[j] + b * u2[j];
    cross[0] = u1[1] * u2[2] - u1[2] * u2[1];
    cross[1] = u1[2] * u2[0] - u1[0] * u2[2];
    cross[2] = u1[0] * u2[1] - u1[1] * u2[0];
    const double rest = 1.0 - (base[0] * base[0] + base[1] * base[1] +
                               base[2] * base[2]);
    if (rest < 0) return;
    const double scale = std::sqrt(rest / det);
    for (double sign : {1.0, -1.0}) {
      const double z = base[2] + sign * scale * cross[2];
      emit(std::acos(std::clamp(z, -1.0, 1.0)));
    }
  }

  const Measure::Node& node_;
  int n_;
  Point c_;
  std::vector<Constraint> cons_;
  std::vector<double> breaks_;
  double t_lo_ = 0.0;
  double t_hi_ = kInf;
  bool has_cap_ = false;
  Point cap_axis_;
  double cap_r_ = 0.0;
  double cap_d_ = 0.0;
  std::vector<Point> frame_;
};

}  // namespace

double ShellBallMass(const Measure::Node& node, const Point& x, double r) {
  ShellProblem problem(node, x, r);
  return problem.Integrate();
}

double PlainRadialBallMass(const RadialDensitySpec& spec, int n,
                           const Point& x, double r) {
  const double g = spec.exponent;
  const double a = n + g;
  const double c = spec.coefficient;
  const double R = spec.cutoff;
  const double omega = UnitSphereArea(n);
  if (std::isinf(r)) return std::isinf(R) ? kInf : c * omega * std::pow(R, a) / a;
  const double d = Distance(x, spec.center);
  if (d == 0) return c * omega * std::pow(std::min(r, R), a) / a;
  if (n == 1) {
    const double y = x[0] - spec.center[0];
    const double lo = std::max(y - r, -R);
    const double hi = std::min(y + r, R);
    if (!(hi > lo)) return 0.0;
    auto G = [a](double v) {
      return std::copysign(std::pow(std::fabs(v), a) / a, v);
    };
    return c * (G(hi) - G(lo));
  }
  double inner = 0.0;
  if (r > d) {
    const double t_in = std::min(r - d, R);
    inner = c * omega * std::pow(t_in, a) / a;
  }
  const double lo = std::fabs(r - d);
  const double hi = std::min(d + r, R);
  if (!(hi > lo)) return inner;
  // Share of the sphere |y - center| = t inside B(x, r).  The argument of
  // the incomplete beta function is written as a product so that thin
  // shells around |x - center| keep their relative accuracy.
  const double half_dim = 0.5 * (n - 1);
  auto cap_at = [&](double t) {
    if (!(t > 0)) return 0.5;
    const double q = (r - t + d) * (r + t - d) / (4.0 * t * d);
    if (q <= 0) return 0.0;
    if (q >= 1) return 1.0;
    return boost::math::ibeta(half_dim, half_dim, q);
  };
  QuadratureOptions opts;
  opts.rel_tol = 1e-11;
  opts.abs_floor = 0.0;
  opts.max_evaluations = 20000;
  if (lo > 0.25 * hi) {
    // Thin shell: integrate in t, where the power weight is smooth.
    auto integrand = [&](double t) { return cap_at(t) * std::pow(t, a - 1.0); };
    const double shell = AdaptiveCosine(integrand, lo, hi, opts).value;
    return inner + c * omega * shell;
  }
  auto cap = [&](double u) { return cap_at(std::pow(u, 1.0 / a)); };
  const double shell =
      AdaptiveCosine(cap, std::pow(lo, a), std::pow(hi, a), opts).value;
  return inner + c * omega / a * shell;
}

}  // namespace nlpot
