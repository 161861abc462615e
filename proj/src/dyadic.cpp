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

#include "nlpot/dyadic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "nlpot/format.hpp"
#include "nlpot/potential.hpp"
#include "nlpot/sampling.hpp"

namespace nlpot {
namespace {

constexpr int kMaxDescent = 400;
constexpr int kRefineDepth = 8;
constexpr int kRadialAuditLevel = -4;

std::int64_t FloorDiv2(std::int64_t i) { return i >= 0 ? i / 2 : -((1 - i) / 2); }

// A measure broken into the pieces cube queries understand.
struct Flat {
  std::vector<Atom> atoms;
  std::vector<BoxPiece> pieces;
  std::vector<Measure> radial;
};

void Flatten(const Measure& m, Flat& out) {
  switch (m.kind()) {
    case MeasureKind::kAtomic:
      for (const auto& a : m.atoms()) out.atoms.push_back(a);
      break;
    case MeasureKind::kRadial:
      out.radial.push_back(m);
      break;
    case MeasureKind::kDyadic:
    case MeasureKind::kBoxes:
      for (const auto& p : m.pieces()) out.pieces.push_back(p);
      break;
    case MeasureKind::kSum:
      for (const auto& part : m.parts()) Flatten(part, out);
      break;
  }
}

double Overlap(const BoxPiece& p, const Point& lo, const Point& hi) {
  double v = 1;
  for (std::size_t j = 0; j < lo.size(); ++j) {
    const double w = std::min(p.hi[j], hi[j]) - std::max(p.lo[j], lo[j]);
    if (w <= 0) return 0.0;
    v *= w;
  }
  return v;
}

double CubeMass(const Flat& flat, const DyadicCube& q) {
  const Point lo = q.lo(), hi = q.hi();
  double m = 0;
  for (const auto& a : flat.atoms) {
    if (q.Contains(a.x)) m += a.mass;
  }
  for (const auto& p : flat.pieces) {
    const double v = Overlap(p, lo, hi);
    if (v > 0) m += p.mass * v / BoxVolume(p.lo, p.hi);
  }
  for (const auto& r : flat.radial) m += Restrict(r, q.Region()).TotalMass();
  return m;
}

// True when sigma restricted to the cube is a constant multiple of Lebesgue
// measure on the whole cube.
bool CubeUniform(const Flat& flat, const DyadicCube& q) {
  const Point lo = q.lo(), hi = q.hi();
  for (const auto& a : flat.atoms) {
    if (q.Contains(a.x)) return false;
  }
  const double vol = std::pow(q.side(), q.dim());
  for (const auto& p : flat.pieces) {
    const double v = Overlap(p, lo, hi);
    if (v > 0 && v < vol * (1 - 1e-12)) return false;
  }
  for (const auto& r : flat.radial) {
    if (!r.radial_is_plain()) return false;
    const RadialDensitySpec& s = r.radial();
    const double far = BoxMaxDistance(Subtract(lo, s.center), Subtract(hi, s.center));
    const double near = BoxMinDistance(Subtract(lo, s.center), Subtract(hi, s.center));
    if (near >= s.cutoff) continue;
    if (s.exponent != 0 || far > s.cutoff) return false;
  }
  return true;
}

// Coordinates of the support relative to the shift, as a bound on |y_j - t_j|.
double Extent(const Measure& m, const Point& shift, const Point* x) {
  const BallRegion b = m.SupportBall();
  double e = 1e-300;
  for (std::size_t j = 0; j < shift.size(); ++j) {
    e = std::max(e, std::fabs(b.center[j] - shift[j]) + b.radius);
    if (x) e = std::max(e, std::fabs((*x)[j] - shift[j]));
  }
  return e;
}

struct Aggregate {
  double mass = 0.0;
  double scanned = 0.0;  // sum of c_Q |Q|^{s'} over scanned cubes Q within
  double tail = 0.0;     // closed-form and refined sums below the finest level
};

class CarlesonScanner {
 public:
  CarlesonScanner(const Exponents& e) : e_(e) {
    kappa_ = e.kernel_exp();
    sp_ = e.s_prime();
    fine_ratio_ = std::pow(2.0, -e.alpha() * e.s() / (e.s() - 1.0));
  }

  // Sum of c_Q |Q|^{s'} over the strict subcubes of `cube`, where `ids`
  // lists the pieces meeting it.
  double Below(const std::vector<BoxPiece>& pieces, const std::vector<int>& ids,
               const DyadicCube& cube, double mass, bool uniform,
               int depth) const {
    const double own = CubeWeight(e_, cube.level) * std::pow(mass, sp_);
    if (uniform || depth == 0) return own * fine_ratio_ / (1.0 - fine_ratio_);
    double s = 0;
    for (const auto& child : cube.Children()) {
      const Point lo = child.lo(), hi = child.hi();
      const double vol = std::pow(child.side(), child.dim());
      double m = 0;
      bool uni = true;
      std::vector<int> sub;
      for (int i : ids) {
        const double v = Overlap(pieces[i], lo, hi);
        if (v <= 0) continue;
        m += pieces[i].mass * v / BoxVolume(pieces[i].lo, pieces[i].hi);
        if (v < vol * (1 - 1e-12)) uni = false;
        sub.push_back(i);
      }
      if (m <= 0) continue;
      s += CubeWeight(e_, child.level) * std::pow(m, sp_) +
           Below(pieces, sub, child, m, uni, depth - 1);
    }
    return s;
  }

  double kappa() const { return kappa_; }
  double sp() const { return sp_; }

 private:
  Exponents e_;
  double kappa_;
  double sp_;
  double fine_ratio_;
};

}  // namespace

// ---------------------------------------------------------------------------
// DyadicCube

double DyadicCube::side() const { return std::ldexp(1.0, level); }

Point DyadicCube::lo() const {
  Point p(index.size());
  const double h = side();
  for (std::size_t j = 0; j < p.size(); ++j) {
    p[j] = h * static_cast<double>(index[j]) + (shift.empty() ? 0.0 : shift[j]);
  }
  return p;
}

Point DyadicCube::hi() const {
  Point p = lo();
  const double h = side();
  for (double& v : p) v += h;
  return p;
}

bool DyadicCube::Contains(const Point& x) const {
  const Point a = lo();
  const double h = side();
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (x[j] < a[j] || x[j] >= a[j] + h) return false;
  }
  return true;
}

DyadicCube DyadicCube::Parent() const {
  DyadicCube p{level + 1, index, shift};
  for (auto& i : p.index) i = FloorDiv2(i);
  return p;
}

std::vector<DyadicCube> DyadicCube::Children() const {
  const int n = dim();
  std::vector<DyadicCube> out;
  out.reserve(std::size_t{1} << n);
  for (int mask = 0; mask < (1 << n); ++mask) {
    DyadicCube c{level - 1, index, shift};
    for (int j = 0; j < n; ++j) c.index[j] = 2 * index[j] + ((mask >> j) & 1);
    out.push_back(std::move(c));
  }
  return out;
}

RegionSpec DyadicCube::Region() const { return MakeCube(index, level, shift); }

DyadicCube CubeContaining(const Point& x, int level, const Point& shift) {
  DyadicCube q;
  q.level = level;
  q.shift = shift;
  q.index.resize(x.size());
  const double h = std::ldexp(1.0, level);
  for (std::size_t j = 0; j < x.size(); ++j) {
    q.index[j] = static_cast<std::int64_t>(std::floor((x[j] - shift[j]) / h));
  }
  // Guard against rounding at cube faces.
  const Point lo = q.lo();
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j] < lo[j]) --q.index[j];
    if (x[j] >= lo[j] + h) ++q.index[j];
  }
  return q;
}

bool LexLess(const DyadicCube& a, const DyadicCube& b) {
  if (a.level != b.level) return a.level < b.level;
  return a.index < b.index;
}

double CubeWeight(const Exponents& e, int level) {
  return std::pow(2.0, level * e.kernel_exp());
}

// ---------------------------------------------------------------------------
// Discrete Wolff potential

double DiscreteWolff(const Measure& measure, const PointFunction& f,
                     const Point& x, const Point& shift,
                     const Exponents& exponents) {
  const int n = exponents.n();
  if (measure.dim() != n || static_cast<int>(x.size()) != n ||
      static_cast<int>(shift.size()) != n) {
    throw std::invalid_argument("dimension mismatch in discrete Wolff potential");
  }
  const Measure wm = Reweight(measure, f, 1.0);
  if (wm.is_zero()) return 0.0;
  const LocalGrowth growth = wm.Growth(x);
  if (growth.atom_mass > 0) return kInf;
  if (std::isinf(wm.SupportBall().radius)) return kInf;

  Flat flat;
  Flatten(wm, flat);
  const double kappa = exponents.kernel_exp();
  const double p = exponents.wolff_power();
  const double extent = Extent(wm, shift, &x);
  const int top = static_cast<int>(std::ceil(std::log2(extent))) + 1;

  double sum = 0;
  const double f_top = CubeMass(flat, CubeContaining(x, top, shift));
  // Above `top` the cube containing x holds a fixed share of the support.
  sum += std::pow(f_top, p) * std::pow(2.0, (top + 1) * kappa) /
         (1.0 - std::pow(2.0, kappa));
  const double uniform_ratio =
      std::pow(2.0, -exponents.alpha() * exponents.s() / (exponents.s() - 1.0));
  for (int k = top; k > top - kMaxDescent; --k) {
    const DyadicCube q = CubeContaining(x, k, shift);
    const double mass = CubeMass(flat, q);
    if (mass <= 0) return sum;
    const double term = CubeWeight(exponents, k) * std::pow(mass, p);
    sum += term;
    if (CubeUniform(flat, q)) return sum + term * uniform_ratio / (1 - uniform_ratio);
    if (flat.atoms.empty() && flat.pieces.empty() && q.side() < 1e-6 * extent) {
      double g = growth.exponent;
      if (std::isnan(g)) g = n;
      const double ratio = std::pow(2.0, -(kappa + g * p));
      if (!(ratio < 1)) return kInf;
      return sum + term * ratio / (1 - ratio);
    }
  }
  return sum;
}

// ---------------------------------------------------------------------------
// Carleson audit

CarlesonReport CarlesonAudit(const Measure& measure, const Exponents& exponents,
                             const std::vector<Point>& shifts,
                             std::optional<LevelRange> levels) {
  const int n = exponents.n();
  if (measure.dim() != n) throw std::invalid_argument("dimension mismatch");
  if (shifts.empty()) throw std::invalid_argument("audit needs at least one shift");
  for (const auto& t : shifts) {
    if (static_cast<int>(t.size()) != n) throw std::invalid_argument("shift dimension");
  }
  CarlesonReport report;
  if (measure.is_zero()) {
    if (levels) report.levels = *levels;
    return report;
  }
  Flat flat;
  Flatten(measure, flat);
  if (std::isinf(measure.SupportBall().radius)) {
    throw std::invalid_argument("Carleson audit needs a compactly supported measure");
  }

  LevelRange range;
  if (levels) {
    range = *levels;
  } else {
    int finest = kRadialAuditLevel;
    if (!flat.pieces.empty()) {
      double side = kInf;
      for (const auto& p : flat.pieces) {
        for (int j = 0; j < n; ++j) side = std::min(side, p.hi[j] - p.lo[j]);
      }
      finest = static_cast<int>(std::floor(std::log2(side))) - 1;
    } else if (!flat.atoms.empty()) {
      double sep = kInf;
      for (std::size_t i = 0; i < flat.atoms.size(); ++i) {
        for (std::size_t k = i + 1; k < flat.atoms.size(); ++k) {
          sep = std::min(sep, Distance(flat.atoms[i].x, flat.atoms[k].x));
        }
      }
      finest = std::isinf(sep) ? 0
                               : static_cast<int>(std::floor(
                                     std::log2(sep / std::sqrt(double(n))))) - 1;
    }
    double extent = 0;
    for (const auto& t : shifts) extent = std::max(extent, Extent(measure, t, nullptr));
    range.finest = finest;
    range.coarsest =
        std::max(finest, static_cast<int>(std::ceil(std::log2(extent))) + 2);
  }
  if (range.coarsest < range.finest) {
    throw std::invalid_argument("level range must satisfy finest <= coarsest");
  }
  report.levels = range;

  if (!flat.atoms.empty()) {
    report.sup_ratio = kInf;
    for (const auto& a : flat.atoms) {
      for (std::size_t sid = 0; sid < shifts.size(); ++sid) {
        DyadicCube q = CubeContaining(a.x, range.finest, shifts[sid]);
        if (!report.witness || LexLess(q, *report.witness)) report.witness = q;
      }
    }
    report.rows.push_back(CarlesonRow{report.witness->level, report.witness->index,
                                      0, kInf});
    return report;
  }

  CarlesonScanner scanner(exponents);
  const double kappa = scanner.kappa(), sp = scanner.sp();
  const double h = std::ldexp(1.0, range.finest);
  const double cell_vol = std::pow(h, n);
  auto consider = [&](double ratio, const DyadicCube& cube, bool limit) {
    if (ratio > report.sup_ratio) {
      report.sup_ratio = ratio;
      report.witness = cube;
      report.witness_is_limit = limit;
    }
  };

  for (std::size_t sid = 0; sid < shifts.size(); ++sid) {
    const Point& t = shifts[sid];
    std::vector<BoxPiece> pieces = flat.pieces;
    for (const auto& r : flat.radial) {
      const Measure cells = Discretize(r, range.finest, t);
      for (const auto& p : cells.pieces()) pieces.push_back(p);
    }
    struct Cell {
      double mass = 0.0;
      bool uniform = true;
      std::vector<int> ids;
    };
    std::map<CellIndex, Cell> finest;
    for (int i = 0; i < static_cast<int>(pieces.size()); ++i) {
      const BoxPiece& p = pieces[i];
      CellIndex first(n), last(n);
      for (int j = 0; j < n; ++j) {
        first[j] = static_cast<std::int64_t>(std::floor((p.lo[j] - t[j]) / h));
        last[j] = static_cast<std::int64_t>(std::ceil((p.hi[j] - t[j]) / h)) - 1;
      }
      CellIndex idx = first;
      const double pv = BoxVolume(p.lo, p.hi);
      while (true) {
        DyadicCube q{range.finest, idx, t};
        const double v = Overlap(p, q.lo(), q.hi());
        if (v > 0) {
          Cell& c = finest[idx];
          c.mass += p.mass * v / pv;
          if (v < cell_vol * (1 - 1e-12)) c.uniform = false;
          c.ids.push_back(i);
        }
        int j = 0;
        for (; j < n; ++j) {
          if (++idx[j] <= last[j]) break;
          idx[j] = first[j];
        }
        if (j == n) break;
      }
    }

    std::map<CellIndex, Aggregate> level_nodes;
    for (auto& [idx, cell] : finest) {
      if (cell.mass <= 0) continue;
      // Several pieces covering the whole cube still give a uniform density.
      DyadicCube q{range.finest, idx, t};
      Aggregate a;
      a.mass = cell.mass;
      a.scanned = CubeWeight(exponents, range.finest) * std::pow(cell.mass, sp);
      a.tail = scanner.Below(pieces, cell.ids, q, cell.mass, cell.uniform,
                             kRefineDepth);
      level_nodes[idx] = a;
    }
    for (int k = range.finest;; ++k) {
      for (const auto& [idx, a] : level_nodes) {
        const double ratio = (a.scanned + a.tail) / a.mass;
        report.rows.push_back(CarlesonRow{k, idx, static_cast<int>(sid), ratio});
        report.tail_bound = std::max(report.tail_bound, a.tail / a.mass);
        consider(ratio, DyadicCube{k, idx, t}, false);
      }
      if (k == range.coarsest) break;
      std::map<CellIndex, Aggregate> parents;
      for (const auto& [idx, a] : level_nodes) {
        CellIndex pi = idx;
        for (auto& v : pi) v = FloorDiv2(v);
        Aggregate& pa = parents[pi];
        pa.mass += a.mass;
        pa.scanned += a.scanned;
        pa.tail += a.tail;
      }
      for (auto& [idx, pa] : parents) {
        pa.scanned += CubeWeight(exponents, k + 1) * std::pow(pa.mass, sp);
      }
      level_nodes = std::move(parents);
    }
    // Ancestors above the coarsest level keep the same mass, so their ratios
    // increase to this limit.
    const double geometric =
        std::pow(2.0, (range.coarsest + 1) * kappa) / (1.0 - std::pow(2.0, kappa));
    for (const auto& [idx, a] : level_nodes) {
      const double limit =
          (a.scanned + a.tail + std::pow(a.mass, sp) * geometric) / a.mass;
      consider(limit, DyadicCube{range.coarsest, idx, t}, true);
    }
  }
  return report;
}

std::string CarlesonCsv(const CarlesonReport& report) {
  std::ostringstream os;
  os << "level,index,shift_id,ratio\n";
  auto index_text = [](const CellIndex& idx) {
    std::string s;
    for (std::size_t j = 0; j < idx.size(); ++j) {
      if (j) s += ':';
      s += std::to_string(idx[j]);
    }
    return s;
  };
  for (const auto& r : report.rows) {
    os << r.level << ',' << index_text(r.index) << ',' << r.shift_id << ','
       << FormatDouble(r.ratio) << '\n';
  }
  os << "supRatio=" << FormatDouble(report.sup_ratio)
     << ",tailBound=" << FormatDouble(report.tail_bound)
     << ",levels=" << report.levels.finest << ".." << report.levels.coarsest;
  if (report.witness) {
    os << ",witness=" << report.witness->level << '/'
       << index_text(report.witness->index)
       << (report.witness_is_limit ? ",witnessIsLimit=1" : ",witnessIsLimit=0");
  } else {
    os << ",witness=none";
  }
  os << '\n';
  return os.str();
}

// ---------------------------------------------------------------------------
// Shift averaging

ShiftAverage ShiftAverageCheck(const Measure& measure, const PointFunction& f,
                               const Point& x, int j, int sample_shifts,
                               const Exponents& exponents, std::uint64_t seed,
                               int j0) {
  if (sample_shifts < 1) throw std::invalid_argument("need at least one shift");
  ShiftAverage out;
  out.seed = seed;
  const Measure weighted = Reweight(measure, f, 1.0);
  if (weighted.is_zero()) return out;
  out.lhs = Wolff(weighted, exponents, x, std::ldexp(1.0, j));
  const auto shifts =
      BallPoints(exponents.n(), sample_shifts, std::ldexp(1.0, j + j0), seed);
  double sum = 0;
  for (const auto& t : shifts) {
    sum += DiscreteWolff(measure, f, x, t, exponents);
    if (std::isinf(sum)) break;
  }
  out.avg = sum / sample_shifts;
  return out;
}

}  // namespace nlpot
