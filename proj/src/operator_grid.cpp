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

#include "nlpot/operator_grid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "nlpot/quadrature.hpp"

namespace nlpot {

struct OperatorGrid::Geometry {
  Point pole;
  double side = 1.0;
  std::vector<Point> nodes;
  std::vector<Point> cell_lo, cell_hi;

  // Per node: radii, the cells sorted by farthest distance, the number of
  // those cells inside each ball, and partially covered cells in CSR form.
  struct NodeData {
    std::vector<double> radii;
    std::vector<int> order;
    std::vector<int> full_count;
    std::vector<int> row;  // radii.size() + 1 offsets into cell/fraction
    std::vector<int> cell;
    std::vector<double> fraction;
    bool lower_tail = false;  // the first radius lies inside the support
  };
  std::vector<NodeData> data;
};

namespace {

// int_a^b (A (r/a)^q) dr/r = A log(b/a) * expm1(q L)/(q L).
double PowerPiece(double amplitude, double a, double b, double q) {
  const double L = std::log(b / a);
  const double z = q * L;
  const double phi = std::fabs(z) < 1e-12 ? 1.0 + 0.5 * z : std::expm1(z) / z;
  return amplitude * L * phi;
}

Measure DiscretizeOrZero(const Measure& m, int level, const Point& pole) {
  if (m.is_zero()) return Measure::Zero(m.dim());
  if (m.kind() == MeasureKind::kAtomic) {
    throw std::invalid_argument("the operator grid cannot discretise atoms");
  }
  return Discretize(m, level, pole);
}

double FaceDistance(const Point& x, const Point& origin, double h) {
  double d = kInf;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double t = (x[j] - origin[j]) / h;
    const double frac = t - std::floor(t);
    d = std::min(d, h * std::min(frac, 1.0 - frac));
  }
  return d;
}

}  // namespace

int GridLevel(const Measure& measure, const GridOptions& options) {
  if (options.level) return *options.level;
  const double r = measure.SupportBall().radius;
  if (!(r > 0) || std::isinf(r)) return -2;
  return static_cast<int>(std::ceil(std::log2(r))) - 2;
}

OperatorGrid::OperatorGrid(std::shared_ptr<const Geometry> geo,
                           Exponents exponents, Measure discretized,
                           std::vector<double> mass)
    : geo_(std::move(geo)),
      exponents_(exponents),
      discretized_(std::move(discretized)),
      mass_(std::move(mass)) {}

OperatorGrid::OperatorGrid(const Measure& measure, const Exponents& exponents,
                           const Point& pole,
                           const std::vector<Point>& extra_nodes,
                           const GridOptions& options)
    : exponents_(exponents),
      discretized_(DiscretizeOrZero(measure, GridLevel(measure, options), pole)) {
  const int n = exponents.n();
  if (measure.dim() != n || static_cast<int>(pole.size()) != n) {
    throw std::invalid_argument("grid dimension mismatch");
  }
  if (!(options.ratio > 1) || !(options.inner_radius > 0) ||
      !(options.max_step > 0)) {
    throw std::invalid_argument("grid options need ratio > 1 and positive steps");
  }
  auto geo = std::make_shared<Geometry>();
  geo->pole = pole;
  geo->side = std::ldexp(1.0, GridLevel(measure, options));
  const double h = geo->side;
  if (!discretized_.is_zero()) {
    for (const auto& p : discretized_.pieces()) {
      if (!(p.mass > 0)) continue;
      geo->cell_lo.push_back(p.lo);
      geo->cell_hi.push_back(p.hi);
      mass_.push_back(p.mass);
    }
  }
  const int cells = static_cast<int>(mass_.size());
  for (int i = 0; i < cells; ++i) {
    Point c(n);
    for (int j = 0; j < n; ++j) c[j] = 0.5 * (geo->cell_lo[i][j] + geo->cell_hi[i][j]);
    geo->nodes.push_back(std::move(c));
  }
  for (const auto& x : extra_nodes) {
    if (static_cast<int>(x.size()) != n || !AllFinite(x)) {
      throw std::invalid_argument("grid nodes must be finite points of R^n");
    }
    geo->nodes.push_back(x);
  }
  geo->nodes.push_back(pole);
  const int nodes = static_cast<int>(geo->nodes.size());
  geo->data.resize(nodes);

  std::vector<double> dmin(cells), dmax(cells);
  for (int v = 0; v < nodes; ++v) {
    Geometry::NodeData& nd = geo->data[v];
    const Point& x = geo->nodes[v];
    if (cells == 0) continue;
    double near = kInf, far = 0;
    for (int i = 0; i < cells; ++i) {
      const Point lo = Subtract(geo->cell_lo[i], x), hi = Subtract(geo->cell_hi[i], x);
      dmin[i] = BoxMinDistance(lo, hi);
      dmax[i] = BoxMaxDistance(lo, hi);
      near = std::min(near, dmin[i]);
      far = std::max(far, dmax[i]);
    }
    double start;
    if (near > 0) {
      start = near;
    } else {
      nd.lower_tail = true;
      start = options.inner_radius * h;
      const double face = FaceDistance(x, pole, h);
      if (face > 1e-9 * h) start = std::min(start, face);
    }
    for (double r = start; r < far;) {
      nd.radii.push_back(r);
      r = std::min(r * options.ratio, r + options.max_step * h);
    }
    nd.radii.push_back(far);
    const double d = Distance(x, pole);
    for (double r : {d, 0.5 * d}) {
      if (r > start && r < far) nd.radii.push_back(r);
    }
    if (v == nodes - 1) {
      for (const auto& y : geo->nodes) {
        const double r = Distance(y, pole);
        if (r > start && r < far) nd.radii.push_back(r);
      }
    }
    std::sort(nd.radii.begin(), nd.radii.end());
    nd.radii.erase(std::unique(nd.radii.begin(), nd.radii.end()), nd.radii.end());

    const int K = static_cast<int>(nd.radii.size());
    nd.order.resize(cells);
    std::iota(nd.order.begin(), nd.order.end(), 0);
    std::sort(nd.order.begin(), nd.order.end(),
              [&](int a, int b) { return dmax[a] < dmax[b]; });
    nd.full_count.assign(K, 0);
    {
      int c = 0;
      for (int k = 0; k < K; ++k) {
        while (c < cells && dmax[nd.order[c]] <= nd.radii[k]) ++c;
        nd.full_count[k] = c;
      }
    }
    std::vector<std::vector<std::pair<int, double>>> rows(K);
    for (int i = 0; i < cells; ++i) {
      auto first = std::upper_bound(nd.radii.begin(), nd.radii.end(), dmin[i]);
      const double vol = BoxVolume(geo->cell_lo[i], geo->cell_hi[i]);
      for (auto it = first; it != nd.radii.end() && *it < dmax[i]; ++it) {
        const int k = static_cast<int>(it - nd.radii.begin());
        const double f =
            BoxBallVolume(geo->cell_lo[i], geo->cell_hi[i], x, *it) / vol;
        if (f > 0) rows[k].emplace_back(i, std::min(f, 1.0));
      }
    }
    nd.row.assign(K + 1, 0);
    for (int k = 0; k < K; ++k) {
      nd.row[k + 1] = nd.row[k] + static_cast<int>(rows[k].size());
      for (const auto& [i, f] : rows[k]) {
        nd.cell.push_back(i);
        nd.fraction.push_back(f);
      }
    }
  }
  geo_ = std::move(geo);
}

OperatorGrid OperatorGrid::Scaled(double lambda) const {
  if (!(lambda > 0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("scale factor must be positive and finite");
  }
  std::vector<double> mass = mass_;
  for (double& m : mass) m *= lambda;
  return OperatorGrid(geo_, exponents_, Scale(discretized_, lambda),
                      std::move(mass));
}

OperatorGrid OperatorGrid::WithExponents(const Exponents& exponents) const {
  if (exponents.n() != exponents_.n()) {
    throw std::invalid_argument("exponents must keep the dimension");
  }
  return OperatorGrid(geo_, exponents, discretized_, mass_);
}

const Exponents& OperatorGrid::exponents() const { return exponents_; }
int OperatorGrid::cells() const { return static_cast<int>(mass_.size()); }
int OperatorGrid::nodes() const { return static_cast<int>(geo_->nodes.size()); }
const Point& OperatorGrid::node(int i) const { return geo_->nodes.at(i); }
const Point& OperatorGrid::pole() const { return geo_->pole; }
double OperatorGrid::cell_side() const { return geo_->side; }

std::vector<double> OperatorGrid::Profile(int node,
                                          const std::vector<double>& w) const {
  const Geometry::NodeData& nd = geo_->data.at(node);
  const int K = static_cast<int>(nd.radii.size());
  std::vector<double> m(K, 0.0);
  const auto weighted = [&](int i) { return w.empty() ? mass_[i] : w[i] * mass_[i]; };
  double prefix = 0;
  int done = 0;
  for (int k = 0; k < K; ++k) {
    for (; done < nd.full_count[k]; ++done) prefix += weighted(nd.order[done]);
    double partial = 0;
    for (int t = nd.row[k]; t < nd.row[k + 1]; ++t) {
      partial += weighted(nd.cell[t]) * nd.fraction[t];
    }
    m[k] = prefix + partial;
  }
  return m;
}

double OperatorGrid::Integrate(int node, const std::vector<double>& weights,
                               double rho, double e, double p) const {
  if (!(e > 0) || !(p > 0)) throw std::invalid_argument("need e > 0 and p > 0");
  if (!(rho > 0)) throw std::invalid_argument("truncation must be positive");
  if (!weights.empty() && static_cast<int>(weights.size()) != cells()) {
    throw std::invalid_argument("one weight per cell expected");
  }
  if (cells() == 0) return 0.0;
  for (int i = 0; i < static_cast<int>(weights.size()); ++i) {
    if (std::isinf(weights[i]) && mass_[i] > 0) return kInf;
  }
  const Geometry::NodeData& nd = geo_->data.at(node);
  const std::vector<double> m = Profile(node, weights);
  const std::vector<double>& r = nd.radii;
  const int K = static_cast<int>(r.size());
  const int n = exponents_.n();
  double total = 0;

  if (nd.lower_tail && m[0] > 0) {
    const double q = (n - e) * p;
    const double amp = std::pow(m[0] * std::pow(r[0], -e), p);
    if (rho <= r[0]) return amp * std::pow(rho / r[0], q) / q;
    total += amp / q;
  }
  for (int k = 0; k + 1 < K && r[k] < rho; ++k) {
    const double a = r[k], b = std::min(r[k + 1], rho);
    if (m[k + 1] <= 0) continue;
    if (m[k] <= 0) {
      // First contact with the support: linear interpolation of the mass.
      const double slope = m[k + 1] / (r[k + 1] - a);
      total += GaussIntegrate(
          [&](double t) {
            return std::pow(slope * (t - a) * std::pow(t, -e), p) / t;
          },
          a, b, 8);
      continue;
    }
    const double g = std::log(m[k + 1] / m[k]) / std::log(r[k + 1] / a);
    const double amp = std::pow(m[k] * std::pow(a, -e), p);
    total += PowerPiece(amp, a, b, (g - e) * p);
  }
  if (rho > r[K - 1] && m[K - 1] > 0) {
    const double amp = std::pow(m[K - 1] * std::pow(r[K - 1], -e), p);
    const double q = e * p;
    total += std::isinf(rho) ? amp / q : amp * -std::expm1(-q * std::log(rho / r[K - 1])) / q;
  }
  return total;
}

std::vector<double> OperatorGrid::ApplyN(
    const std::vector<double>& f_at_nodes) const {
  if (static_cast<int>(f_at_nodes.size()) != nodes()) {
    throw std::invalid_argument("one field value per node expected");
  }
  const Exponents& ex = exponents_;
  std::vector<double> w(cells());
  for (int i = 0; i < cells(); ++i) {
    const double f = f_at_nodes[i];
    if (!(f >= 0)) throw std::invalid_argument("field values must be >= 0");
    w[i] = std::isinf(f) ? kInf : std::pow(f, ex.s() - 1.0);
  }
  std::vector<double> out(nodes());
  for (int v = 0; v < nodes(); ++v) {
    out[v] = Integrate(v, w, kInf, ex.codim(), ex.wolff_power());
  }
  return out;
}

double OperatorGrid::Wolff(int node, double rho) const {
  const Exponents& ex = exponents_;
  return Integrate(node, {}, rho, ex.codim(), ex.wolff_power());
}

double OperatorGrid::Riesz(int node, double order, double rho) const {
  const int n = exponents_.n();
  if (!(order > 0) || !(order < n)) {
    throw std::invalid_argument("Riesz order must lie in (0, n)");
  }
  return Integrate(node, {}, rho, n - order, 1.0);
}

double OperatorGrid::GrowthConstant(double e) const {
  double sup = 0;
  for (int v = 0; v < nodes(); ++v) {
    const auto m = Profile(v, {});
    const auto& r = geo_->data[v].radii;
    for (std::size_t k = 0; k < r.size(); ++k) {
      sup = std::max(sup, m[k] * std::pow(r[k], -e));
    }
  }
  return sup;
}

double OperatorGrid::BallMass(const Point& x, double r) const {
  return discretized_.BallMass(x, r);
}

}  // namespace nlpot
