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

#ifndef NLPOT_SAMPLING_HPP_
#define NLPOT_SAMPLING_HPP_

#include <cstdint>
#include <vector>

#include "nlpot/geometry.hpp"

namespace nlpot {

// Randomly rotated Halton sequence in [0, 1)^dim.  The rotation (a
// Cranley-Patterson shift) is drawn from a Mersenne twister seeded with
// `seed`, so equal seeds give equal sequences.
class HaltonSequence {
 public:
  HaltonSequence(int dim, std::uint64_t seed);

  // The point with the given index (index 0 is skipped internally).
  Point At(std::uint64_t index) const;

  int dim() const { return static_cast<int>(shift_.size()); }

 private:
  std::vector<double> shift_;
};

// `count` directions on S^{dim-1}: Halton points pushed through the inverse
// normal CDF and normalised.
std::vector<Point> SphereDirections(int dim, int count, std::uint64_t seed);

// `count` points of the open ball B(0, radius) taken from a Halton sequence
// by rejection, in sequence order.
std::vector<Point> BallPoints(int dim, int count, double radius,
                              std::uint64_t seed);

}  // namespace nlpot

#endif  // NLPOT_SAMPLING_HPP_
