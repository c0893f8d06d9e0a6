// Copyright 2026 The sl2sum Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Independent plane-geometry checks for the series engine: tangent lines,
// the triangles they cut, the curvilinear regions between a curve and two of
// its tangents, tangent lengths and mixed areas. Region areas come from
// adaptive quadrature along explicit parametrizations of each curve, not
// from summing over the tree.

#pragma once

#include <functional>
#include <vector>

#include "sl2sum/lattice.hpp"
#include "sl2sum/quadrature.hpp"
#include "sl2sum/support.hpp"

namespace sl2sum::geomoracle {

using lattice::UnimodularPair;
using quadrature::QuadratureSpec;
using support::Curve;
using support::Point;

struct TangentLine {
  double a = 0;
  double b = 0;
  double gamma = 0;
  Point tangency;
};

TangentLine tangent_line(const Curve& curve, double a, double b);

// Area of the triangle cut out by the tangents with normals u, v and u + v.
// Throws DegenerateGeometry when two of the lines are nearly parallel.
double triangle_area(const Curve& curve, const UnimodularPair& p);

// Area between the curve and its tangents with normals (1,0) and (0,1).
// Built-ins integrate along their own parametrization; sampled curves use
// the polygon through the samples. Throws ToleranceNotMet on quadrature
// failure.
double region_area(const Curve& curve, const QuadratureSpec& spec = {});

// Signed total length of the two tangent segments with normals (1,0) and
// (0,1), measured from their intersection to the points of tangency. The
// sign is the sign the support values induce on the terms (negative for
// the cycloid and astroid). Throws UnsupportedOperation when a segment is
// unbounded.
double tangent_lengths(const Curve& curve);

// Mixed area of the curvilinear triangles of two curves, by polarization:
// (A(f + g) - A(f) - A(g)) / 2, where f + g is the curve whose support
// values are the sums. Both curves must be convex-certified.
double mixed_volume_oracle(const Curve& f, const Curve& g,
                           const QuadratureSpec& spec = {});

// Area of the curvilinear region between the arc of the curve whose normals
// lie between u and v and the two tangents with normals u and v.
// Requires a convex-certified curve.
double subtree_region_area(const Curve& curve, const UnimodularPair& p,
                           const QuadratureSpec& spec = {});

// Lattice lengths of the two tangent segments from the intersection of the
// tangents u and v to their points of tangency, with the sign of the terms:
//   along_u = gamma(v) - v . T(u),   along_v = gamma(u) - u . T(v).
// For a convex-certified curve the terms of the subtree at p sum to
// along_u + along_v, and their squares sum to at most along_u * along_v.
struct TangentDefects {
  long double along_u = 0;
  long double along_v = 0;
};

template <class Model>
TangentDefects tangent_defects(const Model& m, const UnimodularPair& p) {
  using LD = long double;
  const LD a = static_cast<LD>(p.a());
  const LD b = static_cast<LD>(p.b());
  const LD c = static_cast<LD>(p.c());
  const LD d = static_cast<LD>(p.d());
  const auto tu = m.tangency(a, b);
  const auto tv = m.tangency(c, d);
  return {m.gamma(c, d) - (c * tu.x + d * tu.y),
          m.gamma(a, b) - (a * tv.x + b * tv.y)};
}

// One smooth piece of a curve's parametrization, traversed from the
// tangency with normal (1,0) toward the tangency with normal (0,1).
struct ArcPiece {
  double t0 = 0;
  double t1 = 0;
  std::function<Point(double)> at;
  std::function<Point(double)> velocity;
};

// The parametrization used by region_area for a built-in curve: circle by
// angle, parabola and hyperbola by y after a substitution that removes the
// square-root endpoint singularity, cycloid by its rolling parameter,
// tractrix (two branches meeting at the cusp) and astroid by x.
// Throws UnsupportedOperation for sampled curves.
std::vector<ArcPiece> arc_pieces(const Curve& curve);

// Points along the oracle's parametrization of the arc between the two
// axis-normal tangencies. The tractrix is cut off at finite height.
std::vector<Point> sample_arc(const Curve& curve, std::size_t count);

}  // namespace sl2sum::geomoracle
