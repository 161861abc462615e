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

#include "nlpot/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "measure_node.hpp"
#include "nlpot/quadrature.hpp"

namespace nlpot {
namespace {

using Node = Measure::Node;

constexpr int kBallClipDepth = 6;

std::shared_ptr<Node> NewNode(int dim, MeasureKind kind) {
  auto node = std::make_shared<Node>();
  node->dim = dim;
  node->kind = kind;
  return node;
}

void CheckPoint(const Point& x, int dim, const char* what) {
  if (static_cast<int>(x.size()) != dim) {
    std::ostringstream os;
    os << what << " has dimension " << x.size() << ", expected " << dim;
    throw std::invalid_argument(os.str());
  }
  if (!AllFinite(x)) {
    throw std::invalid_argument(std::string(what) + " has non-finite entries");
  }
}

std::string FormatPoint(const Point& x) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
  os << ")";
  return os.str();
}

double SumMasses(const std::vector<BoxPiece>& pieces) {
  double s = 0;
  for (const auto& p : pieces) s += p.mass;
  return s;
}

Point PieceCenter(const BoxPiece& p) {
  Point c(p.lo.size());
  for (std::size_t j = 0; j < c.size(); ++j) c[j] = 0.5 * (p.lo[j] + p.hi[j]);
  return c;
}

std::vector<BoxPiece> DyadicPieces(const DyadicDensitySpec& spec) {
  std::vector<BoxPiece> out;
  out.reserve(spec.cells.size());
  const double side = std::ldexp(1.0, spec.level);
  for (const auto& [index, mass] : spec.cells) {
    BoxPiece p;
    p.lo.resize(spec.dim);
    p.hi.resize(spec.dim);
    for (int j = 0; j < spec.dim; ++j) {
      p.lo[j] = spec.origin[j] + side * static_cast<double>(index[j]);
      p.hi[j] = p.lo[j] + side;
    }
    p.mass = mass;
    out.push_back(std::move(p));
  }
  return out;
}

double BoxesBallMass(const Node& node, const Point& x, double r) {
  thread_local std::vector<double> lo, hi;
  const int n = node.dim;
  lo.resize(n);
  hi.resize(n);
  double total = 0;
  for (const auto& p : node.pieces) {
    if (p.mass == 0) continue;
    for (int j = 0; j < n; ++j) {
      lo[j] = p.lo[j] - x[j];
      hi[j] = p.hi[j] - x[j];
    }
    const double v = BoxBallVolume(lo, hi, r);
    if (v <= 0) continue;
    total += p.mass * (v / BoxVolume(lo, hi));
  }
  return total;
}

bool SamePoint(const Point& a, const Point& b) {
  return Distance(a, b) <= 1e-14 * std::max(1.0, Norm(a));
}

void ClipBoxToBall(const BoxPiece& piece, const Point& c, double radius,
                   int depth, std::vector<BoxPiece>& out) {
  const Point lo = Subtract(piece.lo, c);
  const Point hi = Subtract(piece.hi, c);
  if (BoxMinDistance(lo, hi) >= radius) return;
  if (BoxMaxDistance(lo, hi) <= radius) {
    out.push_back(piece);
    return;
  }
  if (depth == 0) {
    BoxPiece leaf = piece;
    leaf.mass = piece.mass * BoxBallVolume(lo, hi, radius) / BoxVolume(lo, hi);
    if (leaf.mass > 0) out.push_back(std::move(leaf));
    return;
  }
  const int n = static_cast<int>(piece.lo.size());
  const double child_mass = piece.mass / std::ldexp(1.0, n);
  for (int mask = 0; mask < (1 << n); ++mask) {
    BoxPiece child;
    child.lo.resize(n);
    child.hi.resize(n);
    for (int j = 0; j < n; ++j) {
      const double mid = 0.5 * (piece.lo[j] + piece.hi[j]);
      if (mask & (1 << j)) {
        child.lo[j] = mid;
        child.hi[j] = piece.hi[j];
      } else {
        child.lo[j] = piece.lo[j];
        child.hi[j] = mid;
      }
    }
    child.mass = child_mass;
    ClipBoxToBall(child, c, radius, depth - 1, out);
  }
}

// Cell mass of a plain radial density by integration by parts in the
// distance t from the density centre: m = c [t^g V(t)] - c g int t^{g-1} V.
double RadialCellMass(const RadialDensitySpec& spec, const Point& lo,
                      const Point& hi) {
  const Point rlo = Subtract(lo, spec.center);
  const Point rhi = Subtract(hi, spec.center);
  const double dmin = BoxMinDistance(rlo, rhi);
  const double dmax = BoxMaxDistance(rlo, rhi);
  const double top = std::min(spec.cutoff, dmax);
  if (top <= dmin) return 0.0;
  const double g = spec.exponent;
  const int n = static_cast<int>(lo.size());
  auto V = [&](double t) { return BoxBallVolume(rlo, rhi, t); };
  const double boundary = std::pow(top, g) * V(top);
  if (g == 0) return spec.coefficient * boundary;
  QuadratureOptions opts;
  opts.rel_tol = 1e-10;
  opts.abs_floor = 0;
  double integral = 0;
  if (dmin > 0) {
    auto f = [&](double u) {
      const double t = std::exp(u);
      return std::pow(t, g) * V(t);
    };
    integral = AdaptiveSimpson(f, std::log(dmin), std::log(top), opts).value;
  } else {
    const double ts = 1e-9 * top;
    const double vs = V(ts);
    integral = vs * std::pow(ts, g) / (g + n);
    auto f = [&](double u) {
      const double t = std::exp(u);
      return std::pow(t, g) * V(t);
    };
    integral += AdaptiveSimpson(f, std::log(ts), std::log(top), opts).value;
  }
  return spec.coefficient * (boundary - g * integral);
}

}  // namespace

// ---------------------------------------------------------------------------
// Regions

RegionSpec MakeBall(Point center, double radius) {
  if (!(radius > 0)) throw std::invalid_argument("ball radius must be positive");
  return RegionSpec{BallRegion{std::move(center), radius}};
}

RegionSpec MakeCube(CellIndex index, int level, Point shift) {
  return RegionSpec{CubeRegion{std::move(index), level, std::move(shift)}};
}

RegionSpec MakeUnion(std::vector<RegionSpec> members, bool disjoint) {
  return RegionSpec{UnionRegion{std::move(members), disjoint}};
}

void CubeCorners(const CubeRegion& cube, Point& lo, Point& hi) {
  const std::size_t n = cube.index.size();
  const double side = std::ldexp(1.0, cube.level);
  lo.assign(n, 0.0);
  hi.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const double t = cube.shift.empty() ? 0.0 : cube.shift[j];
    lo[j] = side * static_cast<double>(cube.index[j]) + t;
    hi[j] = lo[j] + side;
  }
}

bool RegionContains(const RegionSpec& region, const Point& x) {
  if (const auto* b = std::get_if<BallRegion>(&region.shape)) {
    return Distance(x, b->center) < b->radius;
  }
  if (const auto* c = std::get_if<CubeRegion>(&region.shape)) {
    Point lo, hi;
    CubeCorners(*c, lo, hi);
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (x[j] < lo[j] || x[j] >= hi[j]) return false;
    }
    return true;
  }
  const auto& u = std::get<UnionRegion>(region.shape);
  return std::any_of(u.members.begin(), u.members.end(),
                     [&](const RegionSpec& m) { return RegionContains(m, x); });
}

// ---------------------------------------------------------------------------
// Construction

Measure::Measure(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Measure Measure::Zero(int dim) { return Atomic(dim, {}); }

Measure Measure::Atomic(int dim, std::vector<Atom> atoms) {
  if (dim < 1) throw std::invalid_argument("dimension must be positive");
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    CheckPoint(atoms[i].x, dim, "atom position");
    if (!(atoms[i].mass > 0) || !std::isfinite(atoms[i].mass)) {
      std::ostringstream os;
      os << "atom #" << i << " at " << FormatPoint(atoms[i].x)
         << " has non-positive or non-finite mass " << atoms[i].mass;
      throw std::invalid_argument(os.str());
    }
  }
  std::vector<std::size_t> order(atoms.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return atoms[a].x < atoms[b].x;
  });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (atoms[order[i]].x == atoms[order[i - 1]].x) {
      throw std::invalid_argument("atoms must be distinct; repeated point " +
                                  FormatPoint(atoms[order[i]].x));
    }
  }
  auto node = NewNode(dim, MeasureKind::kAtomic);
  for (const auto& a : atoms) node->total_mass += a.mass;
  node->atoms = std::move(atoms);
  return Measure(node);
}

Measure Measure::Radial(RadialDensitySpec spec) {
  const int dim = static_cast<int>(spec.center.size());
  if (dim < 1) throw std::invalid_argument("radial density needs a centre");
  CheckPoint(spec.center, dim, "density centre");
  if (!(spec.exponent > -dim) || !std::isfinite(spec.exponent)) {
    throw std::invalid_argument(
        "radial density exponent must exceed -n for local integrability");
  }
  if (!(spec.coefficient > 0) || !std::isfinite(spec.coefficient)) {
    throw std::invalid_argument("radial density coefficient must be positive");
  }
  if (!(spec.cutoff > 0)) {
    throw std::invalid_argument("radial density cutoff must be positive");
  }
  auto node = NewNode(dim, MeasureKind::kRadial);
  const double a = dim + spec.exponent;
  node->total_mass = std::isinf(spec.cutoff)
                         ? kInf
                         : spec.coefficient * UnitSphereArea(dim) *
                               std::pow(spec.cutoff, a) / a;
  node->radial = std::move(spec);
  return Measure(node);
}

Measure Measure::Dyadic(DyadicDensitySpec spec) {
  if (spec.dim < 1) throw std::invalid_argument("dimension must be positive");
  if (spec.origin.empty()) spec.origin.assign(spec.dim, 0.0);
  CheckPoint(spec.origin, spec.dim, "dyadic origin");
  for (auto it = spec.cells.begin(); it != spec.cells.end();) {
    if (static_cast<int>(it->first.size()) != spec.dim) {
      throw std::invalid_argument("dyadic cell index has wrong dimension");
    }
    if (!(it->second >= 0) || std::isnan(it->second)) {
      throw std::invalid_argument("dyadic cell weights must be nonnegative");
    }
    if (it->second == 0) {
      it = spec.cells.erase(it);
    } else {
      ++it;
    }
  }
  auto node = NewNode(spec.dim, MeasureKind::kDyadic);
  node->pieces = DyadicPieces(spec);
  node->total_mass = SumMasses(node->pieces);
  node->dyadic = std::move(spec);
  return Measure(node);
}

Measure Measure::Boxes(int dim, std::vector<BoxPiece> pieces) {
  if (dim < 1) throw std::invalid_argument("dimension must be positive");
  std::vector<BoxPiece> kept;
  for (auto& p : pieces) {
    CheckPoint(p.lo, dim, "box corner");
    CheckPoint(p.hi, dim, "box corner");
    if (!(p.mass >= 0)) throw std::invalid_argument("box mass must be >= 0");
    if (p.mass > 0 && BoxVolume(p.lo, p.hi) > 0) kept.push_back(std::move(p));
  }
  auto node = NewNode(dim, MeasureKind::kBoxes);
  node->pieces = std::move(kept);
  node->total_mass = SumMasses(node->pieces);
  return Measure(node);
}

Measure Measure::Sum(std::vector<Measure> parts) {
  if (parts.empty()) throw std::invalid_argument("sum of no measures");
  const int dim = parts.front().dim();
  auto node = NewNode(dim, MeasureKind::kSum);
  for (const auto& p : parts) {
    if (p.dim() != dim) throw std::invalid_argument("dimension mismatch");
    node->total_mass += p.TotalMass();
  }
  node->parts = std::move(parts);
  return Measure(node);
}

// ---------------------------------------------------------------------------
// Queries

int Measure::dim() const { return node_->dim; }
MeasureKind Measure::kind() const { return node_->kind; }

bool Measure::is_zero() const {
  switch (node_->kind) {
    case MeasureKind::kAtomic:
      return node_->atoms.empty();
    case MeasureKind::kRadial:
      return false;
    case MeasureKind::kDyadic:
    case MeasureKind::kBoxes:
      return node_->pieces.empty();
    case MeasureKind::kSum:
      return std::all_of(node_->parts.begin(), node_->parts.end(),
                         [](const Measure& m) { return m.is_zero(); });
  }
  return false;
}

double Measure::TotalMass() const {
  if (node_->kind == MeasureKind::kRadial &&
      (!node_->clips.empty() || !node_->weights.empty())) {
    return ShellBallMass(*node_, node_->radial.center, kInf);
  }
  return node_->total_mass;
}

double Measure::BallMass(const Point& x, double r) const {
  CheckPoint(x, dim(), "ball centre");
  if (std::isnan(r) || !(r > 0)) {
    throw std::invalid_argument("ball radius must be positive");
  }
  const Node& node = *node_;
  switch (node.kind) {
    case MeasureKind::kAtomic: {
      double s = 0;
      for (const auto& a : node.atoms) {
        if (Distance(a.x, x) < r) s += a.mass;
      }
      return s;
    }
    case MeasureKind::kRadial:
      if (node.clips.empty() && node.weights.empty()) {
        return PlainRadialBallMass(node.radial, node.dim, x, r);
      }
      return ShellBallMass(node, x, r);
    case MeasureKind::kDyadic:
    case MeasureKind::kBoxes:
      if (std::isinf(r)) return node.total_mass;
      return BoxesBallMass(node, x, r);
    case MeasureKind::kSum: {
      double s = 0;
      for (const auto& p : node.parts) s += p.BallMass(x, r);
      return s;
    }
  }
  return 0.0;
}

double Measure::NearestSupportDistance(const Point& x) const {
  const Node& node = *node_;
  switch (node.kind) {
    case MeasureKind::kAtomic: {
      double d = kInf;
      for (const auto& a : node.atoms) d = std::min(d, Distance(a.x, x));
      return d;
    }
    case MeasureKind::kRadial: {
      double d = std::max(0.0, Distance(x, node.radial.center) -
                                   node.radial.cutoff);
      for (const auto& c : node.clips) {
        if (c.is_ball) {
          d = std::max(d, Distance(x, c.center) - c.radius);
        } else {
          d = std::max(d, BoxMinDistance(Subtract(c.lo, x), Subtract(c.hi, x)));
        }
      }
      return d;
    }
    case MeasureKind::kDyadic:
    case MeasureKind::kBoxes: {
      double d = kInf;
      for (const auto& p : node.pieces) {
        d = std::min(d, BoxMinDistance(Subtract(p.lo, x), Subtract(p.hi, x)));
      }
      return d;
    }
    case MeasureKind::kSum: {
      double d = kInf;
      for (const auto& p : node.parts) {
        d = std::min(d, p.NearestSupportDistance(x));
      }
      return d;
    }
  }
  return 0.0;
}

double Measure::FarthestSupportDistance(const Point& x) const {
  const Node& node = *node_;
  switch (node.kind) {
    case MeasureKind::kAtomic: {
      double d = 0;
      for (const auto& a : node.atoms) d = std::max(d, Distance(a.x, x));
      return d;
    }
    case MeasureKind::kRadial: {
      double d = Distance(x, node.radial.center) + node.radial.cutoff;
      for (const auto& c : node.clips) {
        if (c.is_ball) {
          d = std::min(d, Distance(x, c.center) + c.radius);
        } else {
          d = std::min(d, BoxMaxDistance(Subtract(c.lo, x), Subtract(c.hi, x)));
        }
      }
      return d;
    }
    case MeasureKind::kDyadic:
    case MeasureKind::kBoxes: {
      double d = 0;
      for (const auto& p : node.pieces) {
        d = std::max(d, BoxMaxDistance(Subtract(p.lo, x), Subtract(p.hi, x)));
      }
      return d;
    }
    case MeasureKind::kSum: {
      double d = 0;
      for (const auto& p : node.parts) {
        d = std::max(d, p.FarthestSupportDistance(x));
      }
      return d;
    }
  }
  return 0.0;
}

BallRegion Measure::SupportBall() const {
  const Node& node = *node_;
  const int n = node.dim;
  auto from_box = [n](const Point& lo, const Point& hi) {
    BallRegion b;
    b.center.resize(n);
    double r2 = 0;
    for (int j = 0; j < n; ++j) {
      b.center[j] = 0.5 * (lo[j] + hi[j]);
      const double h = 0.5 * (hi[j] - lo[j]);
      r2 += h * h;
    }
    b.radius = std::sqrt(r2);
    return b;
  };
  if (is_zero()) return BallRegion{Point(n, 0.0), 0.0};
  switch (node.kind) {
    case MeasureKind::kAtomic: {
      Point lo = node.atoms.front().x, hi = lo;
      for (const auto& a : node.atoms) {
        for (int j = 0; j < n; ++j) {
          lo[j] = std::min(lo[j], a.x[j]);
          hi[j] = std::max(hi[j], a.x[j]);
        }
      }
      BallRegion b = from_box(lo, hi);
      double r = 0;
      for (const auto& a : node.atoms) r = std::max(r, Distance(a.x, b.center));
      b.radius = r;
      return b;
    }
    case MeasureKind::kRadial: {
      BallRegion b{node.radial.center, node.radial.cutoff};
      for (const auto& c : node.clips) {
        if (c.is_ball && c.radius < b.radius) b = BallRegion{c.center, c.radius};
        if (!c.is_ball) {
          BallRegion cb = from_box(c.lo, c.hi);
          if (cb.radius < b.radius) b = cb;
        }
      }
      return b;
    }
    case MeasureKind::kDyadic:
    case MeasureKind::kBoxes: {
      Point lo = node.pieces.front().lo, hi = node.pieces.front().hi;
      for (const auto& p : node.pieces) {
        for (int j = 0; j < n; ++j) {
          lo[j] = std::min(lo[j], p.lo[j]);
          hi[j] = std::max(hi[j], p.hi[j]);
        }
      }
      return from_box(lo, hi);
    }
    case MeasureKind::kSum: {
      Point lo(n, kInf), hi(n, -kInf);
      bool unbounded = false;
      for (const auto& p : node.parts) {
        if (p.is_zero()) continue;
        BallRegion b = p.SupportBall();
        if (std::isinf(b.radius)) unbounded = true;
        for (int j = 0; j < n; ++j) {
          lo[j] = std::min(lo[j], b.center[j] - b.radius);
          hi[j] = std::max(hi[j], b.center[j] + b.radius);
        }
      }
      if (unbounded) return BallRegion{node.parts.front().SupportBall().center, kInf};
      return from_box(lo, hi);
    }
  }
  return BallRegion{Point(n, 0.0), 0.0};
}

LocalGrowth Measure::Growth(const Point& x) const {
  const Node& node = *node_;
  const int n = node.dim;
  LocalGrowth g;
  g.exponent = n;
  switch (node.kind) {
    case MeasureKind::kAtomic:
      for (const auto& a : node.atoms) {
        if (a.x == x) g.atom_mass += a.mass;
      }
      g.exponent = kInf;
      return g;
    case MeasureKind::kRadial: {
      if (!node.weights.empty()) {
        g.exponent = std::numeric_limits<double>::quiet_NaN();
        return g;
      }
      const RadialDensitySpec& r = node.radial;
      if (SamePoint(x, r.center)) {
        bool inside = true;
        for (const auto& c : node.clips) {
          if (c.is_ball) {
            inside = inside && Distance(x, c.center) < c.radius;
          } else {
            for (int j = 0; j < n; ++j) {
              inside = inside && x[j] > c.lo[j] && x[j] < c.hi[j];
            }
          }
        }
        if (inside) g.exponent = n + r.exponent;
      }
      return g;
    }
    case MeasureKind::kDyadic:
    case MeasureKind::kBoxes:
      return g;
    case MeasureKind::kSum: {
      g.exponent = kInf;
      for (const auto& p : node.parts) {
        const LocalGrowth pg = p.Growth(x);
        g.atom_mass += pg.atom_mass;
        if (std::isnan(pg.exponent) || std::isnan(g.exponent)) {
          g.exponent = std::numeric_limits<double>::quiet_NaN();
        } else if (!p.is_zero() && !p.is_atomic()) {
          g.exponent = std::min(g.exponent, pg.exponent);
        }
      }
      return g;
    }
  }
  return g;
}

std::vector<Point> Measure::SingularPoints() const {
  const Node& node = *node_;
  std::vector<Point> out;
  switch (node.kind) {
    case MeasureKind::kAtomic:
      for (const auto& a : node.atoms) out.push_back(a.x);
      break;
    case MeasureKind::kRadial:
      if (node.radial.exponent < 0 || !node.weights.empty()) {
        out.push_back(node.radial.center);
      }
      break;
    case MeasureKind::kDyadic:
    case MeasureKind::kBoxes:
      break;
    case MeasureKind::kSum:
      for (const auto& p : node.parts) {
        for (auto& q : p.SingularPoints()) out.push_back(std::move(q));
      }
      break;
  }
  return out;
}

const std::vector<Atom>& Measure::atoms() const {
  if (node_->kind != MeasureKind::kAtomic) {
    throw std::logic_error("measure is not atomic");
  }
  return node_->atoms;
}

const RadialDensitySpec& Measure::radial() const {
  if (node_->kind != MeasureKind::kRadial) {
    throw std::logic_error("measure is not a radial density");
  }
  return node_->radial;
}

bool Measure::radial_is_plain() const {
  return node_->kind == MeasureKind::kRadial && node_->clips.empty() &&
         node_->weights.empty();
}

const DyadicDensitySpec& Measure::dyadic() const {
  if (node_->kind != MeasureKind::kDyadic) {
    throw std::logic_error("measure is not a dyadic density");
  }
  return node_->dyadic;
}

const std::vector<Measure>& Measure::parts() const {
  if (node_->kind != MeasureKind::kSum) {
    throw std::logic_error("measure is not a sum");
  }
  return node_->parts;
}

const std::vector<BoxPiece>& Measure::pieces() const {
  if (node_->kind != MeasureKind::kDyadic && node_->kind != MeasureKind::kBoxes) {
    throw std::logic_error("measure has no box pieces");
  }
  return node_->pieces;
}

std::string Measure::Describe() const {
  std::ostringstream os;
  switch (node_->kind) {
    case MeasureKind::kAtomic:
      os << "Atomic(" << node_->atoms.size() << " atoms)";
      break;
    case MeasureKind::kRadial:
      os << "RadialDensity(c=" << node_->radial.coefficient
         << ", exponent=" << node_->radial.exponent
         << ", cutoff=" << node_->radial.cutoff << ")";
      break;
    case MeasureKind::kDyadic:
      os << "DyadicDensity(level=" << node_->dyadic.level << ", "
         << node_->pieces.size() << " cells)";
      break;
    case MeasureKind::kBoxes:
      os << "Boxes(" << node_->pieces.size() << " pieces)";
      break;
    case MeasureKind::kSum:
      os << "Sum(" << node_->parts.size() << " parts)";
      break;
  }
  return os.str();
}

double BallMass(const Measure& measure, const Point& center, double radius) {
  return measure.BallMass(center, radius);
}

// ---------------------------------------------------------------------------
// Transformations

Measure Restrict(const Measure& measure, const RegionSpec& region) {
  const Node& node = measure.node();
  const int n = node.dim;
  if (const auto* u = std::get_if<UnionRegion>(&region.shape)) {
    if (!u->disjoint) {
      throw std::invalid_argument(
          "union regions must be flagged disjoint before restriction");
    }
    if (u->members.empty()) return Measure::Zero(n);
    std::vector<Measure> parts;
    for (const auto& m : u->members) parts.push_back(Restrict(measure, m));
    return Measure::Sum(std::move(parts));
  }
  if (const auto* b = std::get_if<BallRegion>(&region.shape)) {
    CheckPoint(b->center, n, "ball region centre");
    if (!(b->radius > 0)) throw std::invalid_argument("ball radius must be positive");
  } else {
    const auto& c = std::get<CubeRegion>(region.shape);
    if (static_cast<int>(c.index.size()) != n ||
        (!c.shift.empty() && static_cast<int>(c.shift.size()) != n)) {
      throw std::invalid_argument("cube region has wrong dimension");
    }
  }

  switch (node.kind) {
    case MeasureKind::kAtomic: {
      std::vector<Atom> kept;
      for (const auto& a : node.atoms) {
        if (RegionContains(region, a.x)) kept.push_back(a);
      }
      return Measure::Atomic(n, std::move(kept));
    }
    case MeasureKind::kRadial: {
      auto copy = std::make_shared<Node>(node);
      if (const auto* b = std::get_if<BallRegion>(&region.shape)) {
        if (SamePoint(b->center, node.radial.center)) {
          copy->radial.cutoff = std::min(copy->radial.cutoff, b->radius);
          const double a = n + node.radial.exponent;
          copy->total_mass = node.radial.coefficient * UnitSphereArea(n) *
                             std::pow(copy->radial.cutoff, a) / a;
        } else {
          ShellClip clip;
          clip.is_ball = true;
          clip.center = b->center;
          clip.radius = b->radius;
          copy->clips.push_back(clip);
        }
      } else {
        ShellClip clip;
        clip.is_ball = false;
        CubeCorners(std::get<CubeRegion>(region.shape), clip.lo, clip.hi);
        copy->clips.push_back(clip);
      }
      return Measure(copy);
    }
    case MeasureKind::kDyadic:
    case MeasureKind::kBoxes: {
      std::vector<BoxPiece> out;
      if (const auto* b = std::get_if<BallRegion>(&region.shape)) {
        for (const auto& p : node.pieces) {
          ClipBoxToBall(p, b->center, b->radius, kBallClipDepth, out);
        }
      } else {
        Point lo, hi;
        CubeCorners(std::get<CubeRegion>(region.shape), lo, hi);
        for (const auto& p : node.pieces) {
          BoxPiece q = p;
          for (int j = 0; j < n; ++j) {
            q.lo[j] = std::max(p.lo[j], lo[j]);
            q.hi[j] = std::min(p.hi[j], hi[j]);
          }
          const double v = BoxVolume(q.lo, q.hi);
          if (v <= 0) continue;
          q.mass = p.mass * v / BoxVolume(p.lo, p.hi);
          out.push_back(std::move(q));
        }
      }
      return Measure::Boxes(n, std::move(out));
    }
    case MeasureKind::kSum: {
      std::vector<Measure> parts;
      for (const auto& p : node.parts) parts.push_back(Restrict(p, region));
      return Measure::Sum(std::move(parts));
    }
  }
  return measure;
}

Measure Reweight(const Measure& measure, const PointFunction& f, double power) {
  const Node& node = measure.node();
  const int n = node.dim;
  switch (node.kind) {
    case MeasureKind::kAtomic: {
      std::vector<Atom> out;
      for (std::size_t i = 0; i < node.atoms.size(); ++i) {
        const Atom& a = node.atoms[i];
        const double v = f(a.x);
        if (!(v >= 0) || std::isinf(v)) {
          std::ostringstream os;
          os << "reweight: weight is " << v << " at atom #" << i << " "
             << FormatPoint(a.x) << "; it must be finite and nonnegative";
          throw std::domain_error(os.str());
        }
        const double w = (power == 0) ? 1.0 : std::pow(v, power);
        if (std::isinf(w)) {
          std::ostringstream os;
          os << "reweight: weight " << v << " raised to " << power
             << " is infinite at atom #" << i << " " << FormatPoint(a.x);
          throw std::domain_error(os.str());
        }
        if (w > 0) out.push_back(Atom{a.x, a.mass * w});
      }
      return Measure::Atomic(n, std::move(out));
    }
    case MeasureKind::kRadial: {
      auto copy = std::make_shared<Node>(node);
      copy->weights.push_back(
          ShellWeight{std::make_shared<const PointFunction>(f), power});
      return Measure(copy);
    }
    case MeasureKind::kDyadic:
    case MeasureKind::kBoxes: {
      std::vector<BoxPiece> out = node.pieces;
      for (auto& p : out) {
        const Point c = PieceCenter(p);
        const double v = f(c);
        if (!(v >= 0)) {
          throw std::domain_error("reweight: weight is negative or NaN at " +
                                  FormatPoint(c));
        }
        p.mass = (power == 0) ? p.mass : p.mass * std::pow(v, power);
      }
      if (node.kind == MeasureKind::kDyadic) {
        DyadicDensitySpec spec = node.dyadic;
        auto it = spec.cells.begin();
        for (const auto& p : out) (it++)->second = p.mass;
        return Measure::Dyadic(std::move(spec));
      }
      return Measure::Boxes(n, std::move(out));
    }
    case MeasureKind::kSum: {
      std::vector<Measure> parts;
      for (const auto& p : node.parts) parts.push_back(Reweight(p, f, power));
      return Measure::Sum(std::move(parts));
    }
  }
  return measure;
}

Measure Scale(const Measure& measure, double lambda) {
  if (!(lambda >= 0) || std::isinf(lambda)) {
    throw std::invalid_argument("scale factor must be finite and nonnegative");
  }
  const Node& node = measure.node();
  if (lambda == 0) return Measure::Zero(node.dim);
  switch (node.kind) {
    case MeasureKind::kAtomic: {
      std::vector<Atom> atoms = node.atoms;
      for (auto& a : atoms) a.mass *= lambda;
      return Measure::Atomic(node.dim, std::move(atoms));
    }
    case MeasureKind::kRadial: {
      auto copy = std::make_shared<Node>(node);
      copy->radial.coefficient *= lambda;
      copy->total_mass *= lambda;
      return Measure(copy);
    }
    case MeasureKind::kDyadic: {
      DyadicDensitySpec spec = node.dyadic;
      for (auto& [k, w] : spec.cells) w *= lambda;
      return Measure::Dyadic(std::move(spec));
    }
    case MeasureKind::kBoxes: {
      std::vector<BoxPiece> pieces = node.pieces;
      for (auto& p : pieces) p.mass *= lambda;
      return Measure::Boxes(node.dim, std::move(pieces));
    }
    case MeasureKind::kSum: {
      std::vector<Measure> parts;
      for (const auto& p : node.parts) parts.push_back(Scale(p, lambda));
      return Measure::Sum(std::move(parts));
    }
  }
  return measure;
}

Measure Translate(const Measure& measure, const Point& shift) {
  const Node& node = measure.node();
  CheckPoint(shift, node.dim, "translation");
  switch (node.kind) {
    case MeasureKind::kAtomic: {
      std::vector<Atom> atoms = node.atoms;
      for (auto& a : atoms) a.x = Add(a.x, shift);
      return Measure::Atomic(node.dim, std::move(atoms));
    }
    case MeasureKind::kRadial: {
      auto copy = std::make_shared<Node>(node);
      copy->radial.center = Add(node.radial.center, shift);
      for (auto& c : copy->clips) {
        if (c.is_ball) {
          c.center = Add(c.center, shift);
        } else {
          c.lo = Add(c.lo, shift);
          c.hi = Add(c.hi, shift);
        }
      }
      for (auto& w : copy->weights) {
        auto inner = w.f;
        w.f = std::make_shared<const PointFunction>(
            [inner, shift](const Point& y) { return (*inner)(Subtract(y, shift)); });
      }
      return Measure(copy);
    }
    case MeasureKind::kDyadic: {
      DyadicDensitySpec spec = node.dyadic;
      spec.origin = Add(spec.origin, shift);
      return Measure::Dyadic(std::move(spec));
    }
    case MeasureKind::kBoxes: {
      std::vector<BoxPiece> pieces = node.pieces;
      for (auto& p : pieces) {
        p.lo = Add(p.lo, shift);
        p.hi = Add(p.hi, shift);
      }
      return Measure::Boxes(node.dim, std::move(pieces));
    }
    case MeasureKind::kSum: {
      std::vector<Measure> parts;
      for (const auto& p : node.parts) parts.push_back(Translate(p, shift));
      return Measure::Sum(std::move(parts));
    }
  }
  return measure;
}

Measure Discretize(const Measure& measure, int level, const Point& origin) {
  const Node& node = measure.node();
  const int n = node.dim;
  CheckPoint(origin, n, "discretisation origin");
  const double side = std::ldexp(1.0, level);
  DyadicDensitySpec spec;
  spec.dim = n;
  spec.level = level;
  spec.origin = origin;

  auto cell_range = [&](const Point& lo, const Point& hi, CellIndex& first,
                        CellIndex& last) {
    first.resize(n);
    last.resize(n);
    for (int j = 0; j < n; ++j) {
      first[j] = static_cast<std::int64_t>(std::floor((lo[j] - origin[j]) / side));
      last[j] = static_cast<std::int64_t>(std::ceil((hi[j] - origin[j]) / side)) - 1;
    }
  };
  auto for_each_cell = [&](const CellIndex& first, const CellIndex& last,
                           const std::function<void(const CellIndex&)>& fn) {
    CellIndex idx = first;
    while (true) {
      fn(idx);
      int j = 0;
      for (; j < n; ++j) {
        if (++idx[j] <= last[j]) break;
        idx[j] = first[j];
      }
      if (j == n) break;
    }
  };
  auto cell_box = [&](const CellIndex& idx, Point& lo, Point& hi) {
    lo.resize(n);
    hi.resize(n);
    for (int j = 0; j < n; ++j) {
      lo[j] = origin[j] + side * static_cast<double>(idx[j]);
      hi[j] = lo[j] + side;
    }
  };

  switch (node.kind) {
    case MeasureKind::kAtomic:
      throw std::invalid_argument("atomic measures cannot be discretised");
    case MeasureKind::kRadial: {
      if (!measure.radial_is_plain() || std::isinf(node.radial.cutoff)) {
        throw std::invalid_argument(
            "only plain radial densities with finite cutoff can be discretised");
      }
      const RadialDensitySpec& r = node.radial;
      Point lo(n), hi(n);
      for (int j = 0; j < n; ++j) {
        lo[j] = r.center[j] - r.cutoff;
        hi[j] = r.center[j] + r.cutoff;
      }
      CellIndex first, last;
      cell_range(lo, hi, first, last);
      for_each_cell(first, last, [&](const CellIndex& idx) {
        Point clo, chi;
        cell_box(idx, clo, chi);
        const double m = RadialCellMass(r, clo, chi);
        if (m > 0) spec.cells[idx] = m;
      });
      return Measure::Dyadic(std::move(spec));
    }
    case MeasureKind::kDyadic:
    case MeasureKind::kBoxes: {
      for (const auto& p : node.pieces) {
        CellIndex first, last;
        cell_range(p.lo, p.hi, first, last);
        const double pv = BoxVolume(p.lo, p.hi);
        for_each_cell(first, last, [&](const CellIndex& idx) {
          Point clo, chi;
          cell_box(idx, clo, chi);
          for (int j = 0; j < n; ++j) {
            clo[j] = std::max(clo[j], p.lo[j]);
            chi[j] = std::min(chi[j], p.hi[j]);
          }
          const double v = BoxVolume(clo, chi);
          if (v > 0) spec.cells[idx] += p.mass * v / pv;
        });
      }
      return Measure::Dyadic(std::move(spec));
    }
    case MeasureKind::kSum: {
      for (const auto& p : node.parts) {
        if (p.is_zero()) continue;
        const Measure d = Discretize(p, level, origin);
        for (const auto& [k, w] : d.dyadic().cells) spec.cells[k] += w;
      }
      return Measure::Dyadic(std::move(spec));
    }
  }
  return measure;
}

// ---------------------------------------------------------------------------
// Profiles

double BallMassProfile::operator()(double r) const {
  if (!is_step) return measure.BallMass(center, r);
  // Open balls: sigma(B(c, r)) counts the breakpoints strictly below r.
  const auto it = std::lower_bound(breakpoints.begin(), breakpoints.end(), r);
  const std::size_t k = static_cast<std::size_t>(it - breakpoints.begin());
  return k == 0 ? 0.0 : cumulative[k - 1];
}

BallMassProfile MakeProfile(const Measure& measure, const Point& center) {
  BallMassProfile profile{center, false, {}, {}, measure};
  if (!measure.is_atomic()) return profile;
  profile.is_step = true;
  std::vector<std::pair<double, double>> dm;
  for (const auto& a : measure.atoms()) dm.emplace_back(Distance(a.x, center), a.mass);
  std::sort(dm.begin(), dm.end());
  double acc = 0;
  for (std::size_t i = 0; i < dm.size(); ++i) {
    acc += dm[i].second;
    if (!profile.breakpoints.empty() && profile.breakpoints.back() == dm[i].first) {
      profile.cumulative.back() = acc;
    } else {
      profile.breakpoints.push_back(dm[i].first);
      profile.cumulative.push_back(acc);
    }
  }
  return profile;
}

}  // namespace nlpot
