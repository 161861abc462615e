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

#include "nlpot/field.hpp"

#include <cmath>
#include <stdexcept>

#include "nlpot/sampling.hpp"

namespace nlpot {
namespace {

void CollectAtoms(const Measure& m, std::vector<Point>& out) {
  if (m.kind() == MeasureKind::kAtomic) {
    for (const auto& a : m.atoms()) out.push_back(a.x);
  } else if (m.kind() == MeasureKind::kSum) {
    for (const auto& p : m.parts()) CollectAtoms(p, out);
  }
}

}  // namespace

int SampleSet::IndexOf(const Point& x) const {
  for (int i = 0; i < size(); ++i) {
    if (points[i] == x) return i;
  }
  return -1;
}

SampleSet MakeSampleSet(const Measure& measure, const Point& pole,
                        std::uint64_t seed, const SampleOptions& options) {
  const int n = measure.dim();
  if (static_cast<int>(pole.size()) != n || !AllFinite(pole)) {
    throw std::invalid_argument("pole must be a finite point of R^n");
  }
  if (options.shells < 1 || options.directions < 1 ||
      !(options.inner > 0) || !(options.outer >= options.inner)) {
    throw std::invalid_argument("sample options need positive counts and "
                                "0 < inner <= outer");
  }
  double scale = 1.0;
  if (!measure.is_zero()) {
    const double r = measure.SupportBall().radius;
    if (std::isfinite(r) && r > 0) scale = r;
  }
  SampleSet set;
  set.pole = pole;
  set.seed = seed;
  const auto dirs = SphereDirections(n, options.directions, seed);
  const double lo = std::log(options.inner), hi = std::log(options.outer);
  for (int k = 0; k < options.shells; ++k) {
    const double t = options.shells == 1 ? 0.0 : double(k) / (options.shells - 1);
    const double r = scale * std::exp(lo + t * (hi - lo));
    set.shell_radii.push_back(r);
    for (const auto& d : dirs) {
      Point x(n);
      for (int j = 0; j < n; ++j) x[j] = pole[j] + r * d[j];
      set.radii.push_back(Distance(x, pole));
      set.points.push_back(std::move(x));
      set.shell.push_back(k);
    }
  }
  std::vector<Point> atoms;
  CollectAtoms(measure, atoms);
  for (auto& a : atoms) {
    if (a == pole || set.IndexOf(a) >= 0) continue;
    set.radii.push_back(Distance(a, pole));
    set.points.push_back(std::move(a));
    set.shell.push_back(-1);
  }
  return set;
}

FieldFunction FieldFunction::Kernel(Point pole, double kernel_exp) {
  FieldFunction f;
  f.kind_ = FieldKind::kKernel;
  f.pole_ = std::move(pole);
  f.exponent_ = kernel_exp;
  return f;
}

FieldFunction FieldFunction::Supersolution(PointFunction v) {
  if (!v) throw std::invalid_argument("supersolution needs a callable");
  FieldFunction f;
  f.kind_ = FieldKind::kSupersolution;
  f.closure_ = std::move(v);
  return f;
}

FieldFunction FieldFunction::Tabulated(const std::vector<Point>& points,
                                       const std::vector<double>& values) {
  if (points.size() != values.size()) {
    throw std::invalid_argument("tabulated field needs one value per point");
  }
  auto table = std::make_shared<std::map<Point, double>>();
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!(values[i] >= 0)) {
      throw std::invalid_argument("field values must be nonnegative");
    }
    (*table)[points[i]] = values[i];
  }
  FieldFunction f;
  f.kind_ = FieldKind::kTabulated;
  f.table_ = std::move(table);
  return f;
}

double FieldFunction::operator()(const Point& x) const {
  switch (kind_) {
    case FieldKind::kKernel: {
      const double d = Distance(x, pole_);
      return d == 0 ? kInf : std::pow(d, exponent_);
    }
    case FieldKind::kSupersolution:
      return closure_(x);
    case FieldKind::kTabulated: {
      const auto it = table_->find(x);
      if (it == table_->end()) {
        throw std::out_of_range("tabulated field queried off its sample set");
      }
      return it->second;
    }
  }
  return 0.0;
}

PointFunction FieldFunction::AsPointFunction() const {
  return [self = *this](const Point& x) { return self(x); };
}

}  // namespace nlpot
