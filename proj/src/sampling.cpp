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

#include "nlpot/sampling.hpp"

#include <boost/math/special_functions/erf.hpp>
#include <cmath>
#include <random>
#include <stdexcept>

namespace nlpot {
namespace {

constexpr int kPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29,
                           31, 37, 41, 43, 47, 53, 59, 61, 67, 71};

double RadicalInverse(std::uint64_t i, int base) {
  double inv = 1.0 / base, f = inv, x = 0.0;
  while (i > 0) {
    x += f * static_cast<double>(i % base);
    i /= base;
    f *= inv;
  }
  return x;
}

}  // namespace

HaltonSequence::HaltonSequence(int dim, std::uint64_t seed) {
  if (dim < 1 || dim > static_cast<int>(std::size(kPrimes))) {
    throw std::invalid_argument("Halton dimension must lie in [1, 20]");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  shift_.resize(dim);
  for (double& s : shift_) s = unit(rng);
}

Point HaltonSequence::At(std::uint64_t index) const {
  Point p(shift_.size());
  for (std::size_t j = 0; j < shift_.size(); ++j) {
    double v = RadicalInverse(index + 1, kPrimes[j]) + shift_[j];
    p[j] = v - std::floor(v);
  }
  return p;
}

std::vector<Point> SphereDirections(int dim, int count, std::uint64_t seed) {
  HaltonSequence seq(dim, seed);
  std::vector<Point> out;
  out.reserve(count);
  for (std::uint64_t i = 0; static_cast<int>(out.size()) < count; ++i) {
    Point u = seq.At(i);
    bool ok = true;
    for (double& v : u) {
      if (v <= 0.0 || v >= 1.0) {
        ok = false;
        break;
      }
      v = std::sqrt(2.0) * boost::math::erf_inv(2.0 * v - 1.0);
    }
    const double l = Norm(u);
    if (!ok || !(l > 1e-12)) continue;
    for (double& v : u) v /= l;
    out.push_back(std::move(u));
  }
  return out;
}

std::vector<Point> BallPoints(int dim, int count, double radius,
                              std::uint64_t seed) {
  HaltonSequence seq(dim, seed);
  std::vector<Point> out;
  out.reserve(count);
  for (std::uint64_t i = 0; static_cast<int>(out.size()) < count; ++i) {
    Point u = seq.At(i);
    for (double& v : u) v = 2.0 * v - 1.0;
    if (Norm(u) >= 1.0) continue;
    for (double& v : u) v *= radius;
    out.push_back(std::move(u));
  }
  return out;
}

}  // namespace nlpot
