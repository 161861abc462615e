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

#ifndef NLPOT_OPERATOR_GRID_HPP_
#define NLPOT_OPERATOR_GRID_HPP_

#include <memory>
#include <optional>
#include <vector>

#include "nlpot/exponents.hpp"
#include "nlpot/geometry.hpp"
#include "nlpot/measure.hpp"

namespace nlpot {

struct GridOptions {
  // Cells of side 2^level anchored at the pole; unset picks the level from
  // the support radius R as ceil(log2 R) - 2.
  std::optional<int> level;
  double inner_radius = 0.05;  // first radius, in cell sides
  double ratio = 1.0905077326652577;  // 2^{1/8}
  double max_step = 0.125;     // largest radial step, in cell sides
};

// The cell level `options` resolves to for `measure`.
int GridLevel(const Measure& measure, const GridOptions& options);

// The measure discretised into uniform cells, together with ball masses of
// every cell around a fixed list of nodes at precomputed radii.
//
// Nodes are the cell centres (indices 0 .. cells()-1), then the extra
// points given at construction, then the pole.  For every node the radii run
// geometrically from a small inner radius (or from the first contact with
// the support) up to the radius that swallows the whole support, with steps
// capped at max_step; the node's distance to the pole and half of it are
// always included, and the pole node also carries the distance to every
// node.  Between radii the ball mass is interpolated as a power law and the
// radial integrals are summed in closed form.  Below the inner radius the
// mass grows like r^n inside a cell; beyond the last radius it is constant.
class OperatorGrid {
 public:
  // Accepts everything Discretize accepts, and the zero measure.
  OperatorGrid(const Measure& measure, const Exponents& exponents,
               const Point& pole, const std::vector<Point>& extra_nodes,
               const GridOptions& options = {});

  // The same geometry for lambda * sigma, or for other exponents.  The
  // tabulated ball fractions are shared, not recomputed.
  OperatorGrid Scaled(double lambda) const;
  OperatorGrid WithExponents(const Exponents& exponents) const;

  const Exponents& exponents() const;
  const Measure& discretized() const { return discretized_; }
  int cells() const;
  int nodes() const;
  int extra_node(int j) const { return cells() + j; }
  int pole_node() const { return nodes() - 1; }
  const Point& node(int i) const;
  const Point& pole() const;
  double cell_mass(int i) const { return mass_[i]; }
  double cell_side() const;

  // int_0^rho ((sum_i w_i sigma_i(B(node, r))) / r^e)^p dr/r, where sigma_i is
  // the part of the discretised measure in cell i.  An empty `weights`
  // means w = 1.  +inf when a weight is +inf on a cell with mass.
  double Integrate(int node, const std::vector<double>& weights, double rho,
                   double e, double p) const;

  // W_{alpha,s}(f^{s-1} sigma_h) at every node, where sigma_h weights each
  // cell by f at its centre; `f_at_nodes` has one value per node and only
  // the cell-centre entries are read.
  std::vector<double> ApplyN(const std::vector<double>& f_at_nodes) const;

  // Truncated Wolff and Riesz potentials of sigma_h at a node.
  double Wolff(int node, double rho) const;
  double Riesz(int node, double order, double rho) const;

  // sup over nodes and tabulated radii of sigma_h(B(x, r)) / r^e.
  double GrowthConstant(double e) const;

  // Exact sigma_h(B(x, r)) for any centre.
  double BallMass(const Point& x, double r) const;

 private:
  struct Geometry;
  OperatorGrid(std::shared_ptr<const Geometry> geo, Exponents exponents,
               Measure discretized, std::vector<double> mass);
  std::vector<double> Profile(int node, const std::vector<double>& w) const;

  std::shared_ptr<const Geometry> geo_;
  Exponents exponents_;
  Measure discretized_;
  std::vector<double> mass_;
};

}  // namespace nlpot

#endif  // NLPOT_OPERATOR_GRID_HPP_
