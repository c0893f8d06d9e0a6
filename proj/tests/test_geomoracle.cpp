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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include "sl2sum/errors.hpp"
#include "sl2sum/geomoracle.hpp"
#include "sl2sum/series.hpp"

using namespace sl2sum;
using namespace sl2sum::geomoracle;
using std::numbers::pi;
using support::builtin;

namespace {

std::vector<lattice::UnimodularPair> nodes_to_depth(int max_depth) {
  std::vector<std::pair<lattice::UnimodularPair, int>> q{{lattice::root(), 0}};
  std::vector<lattice::UnimodularPair> out;
  for (std::size_t i = 0; i < q.size(); ++i) {
    out.push_back(q[i].first);
    if (q[i].second == max_depth) continue;
    const auto ch = lattice::children(q[i].first);
    q.push_back({ch.left, q[i].second + 1});
    q.push_back({ch.right, q[i].second + 1});
  }
  return out;
}

// Maximizes a*x + b*y along one parametrized piece: a coarse scan, then
// golden-section search around the best sample.
double max_along(const ArcPiece& piece, double a, double b) {
  auto f = [&](double t) {
    const Point p = piece.at(t);
    return a * p.x + b * p.y;
  };
  const int n = 4000;
  const double lo = std::min(piece.t0, piece.t1);
  const double hi = std::max(piece.t0, piece.t1);
  const double h = (hi - lo) / n;
  int best = 0;
  double best_v = -INFINITY;
  for (int i = 0; i <= n; ++i) {
    // Endpoints may be singular; stay a hair inside.
    const double t = std::clamp(lo + i * h, lo + 1e-15, hi - 1e-15);
    const double v = f(t);
    if (v > best_v) {
      best_v = v;
      best = i;
    }
  }
  double x0 = std::max(lo + 1e-15, lo + (best - 1) * h);
  double x1 = std::min(hi - 1e-15, lo + (best + 1) * h);
  const double g = (std::sqrt(5.0) - 1) / 2;
  for (int it = 0; it < 200; ++it) {
    const double m1 = x1 - g * (x1 - x0);
    const double m2 = x0 + g * (x1 - x0);
    if (f(m1) < f(m2)) {
      x0 = m1;
    } else {
      x1 = m2;
    }
  }
  return std::max(best_v, f(0.5 * (x0 + x1)));
}

}  // namespace

TEST_CASE("tangent lines pass through their tangency points") {
  for (std::string_view name : support::builtin_names()) {
    const auto c = builtin(name);
    for (int a = 1; a <= 6; ++a) {
      for (int b = 1; b <= 6; ++b) {
        const TangentLine t = tangent_line(c, a, b);
        CHECK(std::abs(t.a * t.tangency.x + t.b * t.tangency.y - t.gamma) < 1e-10);
      }
    }
  }
}

TEST_CASE("triangle areas at the root") {
  const auto root = lattice::root();
  CHECK(triangle_area(builtin("circle"), root) ==
        doctest::Approx(0.5 * (2 - std::sqrt(2.0)) * (2 - std::sqrt(2.0))).epsilon(1e-14));
  CHECK(triangle_area(builtin("parabola"), root) ==
        doctest::Approx(1.0 / 128).epsilon(1e-14));
}

TEST_CASE("term squared is twice the tangent triangle, depth 6") {
  for (const char* name : {"circle", "parabola"}) {
    const auto c = builtin(name);
    for (const auto& p : nodes_to_depth(6)) {
      const double f = series::term(c, p);
      const double s = triangle_area(c, p);
      CHECK(std::abs(f * f - 2 * s) <= 1e-6 * f * f);
    }
  }
}

TEST_CASE("region areas") {
  CHECK(region_area(builtin("circle")) == doctest::Approx(1 - pi / 4).epsilon(1e-12));
  CHECK(region_area(builtin("parabola")) == doctest::Approx(1.0 / 96).epsilon(1e-10));
  CHECK(region_area(builtin("hyperbola")) ==
        doctest::Approx((0.5 * std::log(3.0) + 2 * std::sqrt(3.0) - 4) / 2).epsilon(1e-9));
  CHECK(region_area(builtin("cycloid")) == doctest::Approx(pi / 2).epsilon(1e-12));
  CHECK(region_area(builtin("astroid")) == doctest::Approx(3 * pi / 32).epsilon(1e-10));
  // The tractrix loop: between the y-axis and both branches of the envelope,
  // pi / 8 by a separate high-precision quadrature.
  CHECK(region_area(builtin("tractrix")) == doctest::Approx(pi / 8).epsilon(1e-9));
}

TEST_CASE("halving the tolerance moves region areas by less than it") {
  for (const char* name : {"circle", "parabola", "hyperbola", "cycloid"}) {
    const auto c = builtin(name);
    for (double tol : {1e-6, 1e-8, 1e-10}) {
      const double coarse = region_area(c, {tol, 1 << 20});
      const double fine = region_area(c, {tol / 2, 1 << 20});
      CHECK(std::abs(coarse - fine) < tol);
    }
  }
}

TEST_CASE("tangent lengths") {
  CHECK(tangent_lengths(builtin("circle")) == doctest::Approx(2).epsilon(1e-15));
  CHECK(tangent_lengths(builtin("astroid")) == doctest::Approx(-2).epsilon(1e-15));
  CHECK(tangent_lengths(builtin("parabola")) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(tangent_lengths(builtin("cycloid")) == doctest::Approx(-2 - pi).epsilon(1e-15));
  CHECK_THROWS_AS(tangent_lengths(builtin("tractrix")), UnsupportedOperation);
}

TEST_CASE("mixed volume oracle") {
  const auto circle = builtin("circle");
  const auto parabola = builtin("parabola");
  CHECK(mixed_volume_oracle(circle, circle) == doctest::Approx(1 - pi / 4).epsilon(1e-10));
  CHECK(mixed_volume_oracle(parabola, parabola) == doctest::Approx(1.0 / 96).epsilon(1e-8));
  CHECK(mixed_volume_oracle(builtin("cycloid"), builtin("cycloid")) ==
        doctest::Approx(pi / 2).epsilon(1e-10));
  CHECK(std::abs(mixed_volume_oracle(circle, parabola) -
                 mixed_volume_oracle(parabola, circle)) < 1e-10);
  CHECK_THROWS_AS(mixed_volume_oracle(circle, builtin("astroid")),
                  UnsupportedOperation);
}

TEST_CASE("subtree regions") {
  const auto circle = builtin("circle");
  CHECK(subtree_region_area(circle, lattice::root()) ==
        doctest::Approx(1 - pi / 4).epsilon(1e-12));
  // The two children split the root region, minus the root triangle.
  const auto ch = lattice::children(lattice::root());
  const double split = subtree_region_area(circle, ch.left) +
                       subtree_region_area(circle, ch.right) +
                       triangle_area(circle, lattice::root());
  CHECK(split == doctest::Approx(1 - pi / 4).epsilon(1e-12));
  CHECK_THROWS_AS(subtree_region_area(builtin("astroid"), lattice::root()),
                  UnsupportedOperation);
}

TEST_CASE("tangent defects at the root") {
  const auto root = lattice::root();
  auto d = tangent_defects(support::Circle{}, root);
  CHECK(static_cast<double>(d.along_u) == doctest::Approx(1));
  CHECK(static_cast<double>(d.along_v) == doctest::Approx(1));
  d = tangent_defects(support::Parabola{}, root);
  CHECK(static_cast<double>(d.along_u) == doctest::Approx(0.25));
  CHECK(static_cast<double>(d.along_v) == doctest::Approx(0.25));
  d = tangent_defects(support::Cycloid{}, root);
  CHECK(static_cast<double>(d.along_u) == doctest::Approx(-2));
  CHECK(static_cast<double>(d.along_v) == doctest::Approx(-pi));
  d = tangent_defects(support::Astroid{}, root);
  CHECK(static_cast<double>(d.along_u) == doctest::Approx(-1));
  CHECK(static_cast<double>(d.along_v) == doctest::Approx(-1));
}

TEST_CASE("cycloid support values are minima over its arc") {
  const auto c = builtin("cycloid");
  const auto pieces = arc_pieces(c);
  for (int a = 0; a <= 20; ++a) {
    for (int b = 0; b <= 20; ++b) {
      if (std::gcd(a, b) != 1) continue;
      double best = -INFINITY;
      for (const ArcPiece& piece : pieces) best = std::max(best, max_along(piece, -a, -b));
      CHECK(std::abs(-best - c.gamma(a, b)) < 1e-8);
    }
  }
}

TEST_CASE("support values are maxima over the convex arcs") {
  for (const char* name : {"circle", "parabola", "hyperbola"}) {
    const auto c = builtin(name);
    const auto pieces = arc_pieces(c);
    for (int a = 0; a <= 20; ++a) {
      for (int b = 0; b <= 20; ++b) {
        if (std::gcd(a, b) != 1) continue;
        double best = -INFINITY;
        for (const ArcPiece& piece : pieces) best = std::max(best, max_along(piece, a, b));
        CHECK(std::abs(best - c.gamma(a, b)) < 1e-8);
      }
    }
  }
}

TEST_CASE("tangency points of every built-in lie on the oracle arc") {
  // Each tangency point must be reachable by the parametrization: its
  // distance to the densely sampled arc is tiny.
  for (std::string_view name : support::builtin_names()) {
    const auto c = builtin(name);
    const auto pts = sample_arc(c, 200000);
    for (int a = 1; a <= 5; ++a) {
      for (int b = 1; b <= 5; ++b) {
        if (std::gcd(a, b) != 1) continue;
        const auto t = c.tangency(a, b);
        double dist = INFINITY;
        for (const Point& p : pts) {
          dist = std::min(dist, std::hypot(p.x - double(t.x), p.y - double(t.y)));
        }
        CHECK(dist < 1e-3);
      }
    }
  }
}

TEST_CASE("sampled curves use the polygon") {
  std::vector<support::Point> pts;
  for (int i = 0; i <= 4000; ++i) {
    const double t = pi / 2 * i / 4000;
    pts.push_back({std::cos(t), std::sin(t)});
  }
  const support::Curve c(support::SampledCurve(std::move(pts)));
  CHECK(std::abs(region_area(c) - (1 - pi / 4)) < 1e-6);
  CHECK(std::abs(tangent_lengths(c) - 2) < 1e-6);
}
