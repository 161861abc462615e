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

// Independent reference computations for the tests.  Nothing here calls the
// library's integration or geometry code; the oracles use their own plain
// quadrature, sampling and enumeration so that agreement is meaningful.

#ifndef NLPOT_TESTS_ORACLES_HPP_
#define NLPOT_TESTS_ORACLES_HPP_

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "nlpot/measure.hpp"

namespace nlpot::oracle {

// Composite Simpson with `panels` (even) panels.
double Simpson(const std::function<double(double)>& f, double a, double b,
               int panels);

// int_0^rho (sigma(B(x, r)) / r^e)^p dr/r for an atomic measure, integrated
// numerically on a logarithmic grid of about `nodes` points spread over the
// intervals between consecutive atom distances, plus the exact saturated
// tail beyond the farthest atom.
double AtomicLogGrid(const std::vector<Atom>& atoms, const Point& x, double rho,
                     double e, double p, int nodes = 10000);

// A density on a bounding box.
struct Density {
  std::function<double(const Point&)> value;
  Point lo;
  Point hi;
};

Density LebesgueBall(const Point& center, double radius, double coefficient);
// c |y - center|^gamma on B(center, cutoff).
Density PowerDensity(const Point& center, double gamma, double c, double cutoff);
// Uniform density of total mass `mass` on the box [lo, hi).
Density UniformBox(const Point& lo, const Point& hi, double mass);

// Jittered-stratified Monte-Carlo estimate of int_{B(c, r)} density, with
// about `samples` points spread over the intersection of the ball's and the
// density's bounding boxes.
double StratifiedBallMass(const Density& d, const Point& c, double r,
                          long samples, std::uint64_t seed);

// Importance-sampled estimate of int_{B(c, r)} w(y) rho(y) dy for the radial
// density rho(y) = coefficient |y - center|^gamma on B(center, cutoff): radii
// are drawn from the radial law itself, so singular densities have bounded
// weights and finite variance.
double RadialImportanceBallMass(const Point& center, double gamma,
                                double coefficient, double cutoff,
                                const std::function<double(const Point&)>& w,
                                const Point& c, double r, long samples,
                                std::uint64_t seed);

// Mass of B(x, r) under c |y|^{-2} dy on R^3 with |x| = a, from the spherical
// shells |y| = t: each contributes c 2 pi (1 - h(t)) dt with h the cosine of
// the cap where the shell meets the ball.
double HardyBallMass3(double c, double a, double r, int panels = 4000);

// Volume of B(0, a) intersected with B(y, b) in R^3, |y| = dist.
double LensVolume3(double a, double b, double dist);

// Carleson ratio of the cube P = [0, 2^level)^n + 2^level index for
// Lebesgue measure on [0, 1)^n, summing c_Q |Q|^{s'} level by level over
// `depth` levels below P.  When `ancestors` > 0 the cube's ancestors are
// followed that many levels up and the sum over P is replaced by the sum over
// the top ancestor, divided by the same mass.
double UnitCubeCarleson(int n, double alpha, double s, int level,
                        const std::vector<std::int64_t>& index, int depth,
                        int ancestors = 0);

// Random helpers.
double Uniform(std::mt19937_64& rng, double lo, double hi);
Point RandomPoint(std::mt19937_64& rng, int n, double radius);

// (sum lambda)^m and m sum_j lambda_j (sum_{k<=j} lambda_k)^{m-1}, computed
// by explicit double loops.
double SbpPowerLeft(const std::vector<double>& lambda, int m);
double SbpPowerRight(const std::vector<double>& lambda, int m);
// sum_j lambda_j exp(sum_{k>=j} lambda_k), by explicit double loops.
double SbpExpLeft(const std::vector<double>& lambda);

}  // namespace nlpot::oracle

#endif  // NLPOT_TESTS_ORACLES_HPP_
