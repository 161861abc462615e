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

#ifndef NLPOT_GEOMETRY_HPP_
#define NLPOT_GEOMETRY_HPP_

#include <limits>
#include <span>
#include <vector>

namespace nlpot {

using Point = std::vector<double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

double Norm(std::span<const double> v);
double Distance(std::span<const double> a, std::span<const double> b);
Point Subtract(std::span<const double> a, std::span<const double> b);
Point Add(std::span<const double> a, std::span<const double> b);
bool AllFinite(std::span<const double> v);

// Volume of the unit ball in R^n.
double UnitBallVolume(int n);

// Surface area of the unit sphere S^{n-1} in R^n.
double UnitSphereArea(int n);

// Fraction of the surface of S^{n-1} whose first coordinate exceeds h.
double SphereCapFraction(int n, double h);

// Euclidean distance from the origin to the nearest and farthest points of
// the box [lo, hi].
double BoxMinDistance(std::span<const double> lo, std::span<const double> hi);
double BoxMaxDistance(std::span<const double> lo, std::span<const double> hi);

// Lebesgue measure of [lo, hi] intersected with the open ball B(0, r).  The
// box is given in coordinates relative to the ball center.  Exact in one and
// two dimensions; in higher dimensions the slice areas are integrated with
// Gauss-Legendre panels split at every radius where the slice geometry
// changes, which keeps the relative error near 1e-11.
double BoxBallVolume(std::span<const double> lo, std::span<const double> hi,
                     double r);

// Same, with the ball center given explicitly.
double BoxBallVolume(std::span<const double> lo, std::span<const double> hi,
                     std::span<const double> center, double r);

double BoxVolume(std::span<const double> lo, std::span<const double> hi);

}  // namespace nlpot

#endif  // NLPOT_GEOMETRY_HPP_
