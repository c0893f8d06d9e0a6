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

#include "sl2sum/geomoracle.hpp"

#include <cmath>
#include <numbers>

#include "sl2sum/errors.hpp"

namespace sl2sum::geomoracle {

namespace {

using LD = long double;
using std::numbers::pi;
using support::Vec2;

// Intersection of a1 x + b1 y = g1 and a2 x + b2 y = g2.
Vec2<LD> intersect(LD a1, LD b1, LD g1, LD a2, LD b2, LD g2) {
  const LD det = a1 * b2 - b1 * a2;
  if (std::abs(det) < 1e-14L) {
    throw DegenerateGeometry("tangent lines are nearly parallel");
  }
  return {(g1 * b2 - b1 * g2) / det, (a1 * g2 - g1 * a2) / det};
}

Point to_point(const Vec2<LD>& v) {
  return {static_cast<double>(v.x), static_cast<double>(v.y)};
}

// Tangency points of the arc ends, taken from the arc itself.
struct ArcEnds {
  Point contact_u;  // normal (1, 0)
  Point contact_v;  // normal (0, 1)
};

ArcEnds arc_ends(const Curve& curve) {
  const std::string_view n = curve.name();
  const double inf = std::numeric_limits<double>::infinity();
  if (n == support::Circle::name) return {{1, 0}, {0, 1}};
  if (n == support::Parabola::name) return {{1.25, 0.75}, {1, 1}};
  if (n == support::Hyperbola::name) {
    return {{-std::sqrt(3.0), -2 / std::sqrt(3.0)}, {-2, -1}};
  }
  if (n == support::Cycloid::name) return {{0, 4}, {pi, 2}};
  if (n == support::Tractrix::name) return {{0, inf}, {0, 0}};
  if (n == support::Astroid::name) return {{0, 1}, {1, 0}};
  if (curve.is_sampled()) {
    return {to_point(curve.tangency(1, 0)), to_point(curve.tangency(0, 1))};
  }
  throw InternalError("no arc geometry for curve");
}

double tractrix_y(double theta) {
  const double c = std::cos(theta);
  return -std::log(std::sin(theta)) - c * c;
}

// Oriented area of the loop P -> T_u -> arc -> T_v -> P via Green's theorem.
double green_loop(const Curve& curve, const QuadratureSpec& spec) {
  const auto pieces = arc_pieces(curve);
  const ArcEnds ends = arc_ends(curve);
  const Point p{curve.gamma(1, 0), curve.gamma(0, 1)};
  auto closing = [&](const Point& from, const Point& to) {
    if (!std::isfinite(from.x) || !std::isfinite(from.y) ||
        !std::isfinite(to.x) || !std::isfinite(to.y)) {
      // A segment to a point at infinity along a line through the origin
      // sweeps no area.
      if (p.x == 0 && p.y == 0) return 0.0;
      throw UnsupportedOperation("unbounded tangent segment");
    }
    return 0.5 * (from.x * to.y - from.y * to.x);
  };
  double area = closing(p, ends.contact_u) + closing(ends.contact_v, p);
  QuadratureSpec piece_spec = spec;
  piece_spec.abs_tol = spec.abs_tol / static_cast<double>(pieces.size());
  for (const ArcPiece& piece : pieces) {
    auto integrand = [&](double t) {
      const Point x = piece.at(t);
      const Point v = piece.velocity(t);
      return 0.5 * (x.x * v.y - x.y * v.x);
    };
    area += quadrature::integrate(integrand, piece.t0, piece.t1, piece_spec).value;
  }
  return area;
}

// Oriented area of the region between the arc with normals at angles
// [theta0, theta1] and the tangents at its ends, with the origin moved to
// the tangents' intersection P. In terms of the support function h_P of the
// shifted curve, the arc sweeps (1/2) int (h_P^2 - h_P'^2) + (1/2)[h_P h_P'].
template <class Support, class Contact>
double support_loop(Support h, Contact contact, const Vec2<LD>& p,
                    double theta0, double theta1, const QuadratureSpec& spec) {
  auto shifted = [&](double theta, double& hp, double& dhp) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const Vec2<LD> x = contact(c, s);
    hp = static_cast<double>(h(c, s) - (p.x * c + p.y * s));
    dhp = static_cast<double>((x.x - p.x) * -s + (x.y - p.y) * c);
  };
  auto integrand = [&](double theta) {
    double hp = 0;
    double dhp = 0;
    shifted(theta, hp, dhp);
    return 0.5 * (hp * hp - dhp * dhp);
  };
  double h0 = 0, d0 = 0, h1 = 0, d1 = 0;
  shifted(theta0, h0, d0);
  shifted(theta1, h1, d1);
  const double ends = 0.5 * (h1 * d1 - h0 * d0);
  return quadrature::integrate(integrand, theta0, theta1, spec).value + ends;
}

Vec2<LD> corner(const Curve& curve) {
  return {curve.gamma_ext(1, 0), curve.gamma_ext(0, 1)};
}

double curvilinear_triangle_signed(const Curve& curve,
                                   const QuadratureSpec& spec) {
  return support_loop(
      [&](double c, double s) { return curve.gamma_ext(c, s); },
      [&](double c, double s) { return curve.tangency(c, s); }, corner(curve),
      0.0, pi / 2, spec);
}

void require_certified(const Curve& curve, const char* what) {
  if (curve.convexity() != support::Convexity::certified) {
    throw UnsupportedOperation(std::string(what) + " needs a convex-certified curve, got " +
                               std::string(curve.name()));
  }
}

}  // namespace

TangentLine tangent_line(const Curve& curve, double a, double b) {
  const Vec2<LD> t = curve.tangency(a, b);
  return {a, b, curve.gamma(a, b), to_point(t)};
}

double triangle_area(const Curve& curve, const UnimodularPair& p) {
  const LD a = static_cast<LD>(p.a());
  const LD b = static_cast<LD>(p.b());
  const LD c = static_cast<LD>(p.c());
  const LD d = static_cast<LD>(p.d());
  const LD gu = curve.gamma_ext(a, b);
  const LD gv = curve.gamma_ext(c, d);
  const LD gw = curve.gamma_ext(a + c, b + d);
  const Vec2<LD> uv = intersect(a, b, gu, c, d, gv);
  const Vec2<LD> uw = intersect(a, b, gu, a + c, b + d, gw);
  const Vec2<LD> wv = intersect(a + c, b + d, gw, c, d, gv);
  const LD cr = (uw.x - uv.x) * (wv.y - uv.y) - (uw.y - uv.y) * (wv.x - uv.x);
  return static_cast<double>(std::abs(cr) / 2);
}

std::vector<ArcPiece> arc_pieces(const Curve& curve) {
  const std::string_view n = curve.name();
  if (n == support::Circle::name) {
    return {{0, pi / 2, [](double t) { return Point{std::cos(t), std::sin(t)}; },
             [](double t) { return Point{-std::sin(t), std::cos(t)}; }}};
  }
  if (n == support::Parabola::name) {
    // y = 1 - (x - y)^2 on the arc is x = y + sqrt(1 - y); with
    // y = 1 - w^2 the square root is w, running from 1/2 down to 0.
    return {{0.5, 0.0,
             [](double w) { return Point{1 - w * w + w, 1 - w * w}; },
             [](double w) { return Point{1 - 2 * w, -2 * w}; }}};
  }
  if (n == support::Hyperbola::name) {
    // y^2 - (x - 2y)^2 = 1 on the arc is x = 2y + sqrt(y^2 - 1); with
    // y = -cosh(t) the square root is sinh(t), t running down to 0.
    return {{std::acosh(2 / std::sqrt(3.0)), 0.0,
             [](double t) {
               return Point{-2 * std::cosh(t) + std::sinh(t), -std::cosh(t)};
             },
             [](double t) {
               return Point{-2 * std::sinh(t) + std::cosh(t), -std::sinh(t)};
             }}};
  }
  if (n == support::Cycloid::name) {
    return {{0, pi,
             [](double t) { return Point{t - std::sin(t), 3 + std::cos(t)}; },
             [](double t) { return Point{1 - std::cos(t), -std::sin(t)}; }}};
  }
  if (n == support::Tractrix::name) {
    // The branch from the asymptote to the cusp at x = 1/2, then the branch
    // from the cusp down to the origin. On both, dy/dx = -cot(theta).
    auto upper = [](double x) { return 0.5 * std::asin(2 * x); };
    auto lower = [](double x) { return 0.5 * (pi - std::asin(2 * x)); };
    return {{0.0, 0.5,
             [upper](double x) { return Point{x, tractrix_y(upper(x))}; },
             [upper](double x) { return Point{1, -1 / std::tan(upper(x))}; }},
            {0.5, 0.0,
             [lower](double x) { return Point{x, tractrix_y(lower(x))}; },
             [lower](double x) { return Point{1, -1 / std::tan(lower(x))}; }}};
  }
  if (n == support::Astroid::name) {
    return {{0, 1,
             [](double x) {
               return Point{x, std::pow(1 - std::cbrt(x * x), 1.5)};
             },
             [](double x) {
               const double r = 1 - std::cbrt(x * x);
               return Point{1, -std::sqrt(r) / std::cbrt(x)};
             }}};
  }
  throw UnsupportedOperation("no parametrization for curve " + std::string(n));
}

double region_area(const Curve& curve, const QuadratureSpec& spec) {
  if (!curve.is_sampled()) return std::abs(green_loop(curve, spec));

  // Polygon P -> T_u -> samples between the two tangencies -> T_v -> P.
  const auto& model = std::get<support::SampledCurve>(curve.model());
  const auto pts = model.points();
  const ArcEnds ends = arc_ends(curve);
  const Point p{curve.gamma(1, 0), curve.gamma(0, 1)};
  auto nearest = [&](const Point& q) {
    std::size_t best = 0;
    double dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const double d = std::hypot(pts[i].x - q.x, pts[i].y - q.y);
      if (d < dist) {
        dist = d;
        best = i;
      }
    }
    return best;
  };
  const std::size_t iu = nearest(ends.contact_u);
  const std::size_t iv = nearest(ends.contact_v);
  std::vector<Point> loop{p, ends.contact_u};
  if (iu <= iv) {
    for (std::size_t i = iu + 1; i < iv; ++i) loop.push_back(pts[i]);
  } else {
    for (std::size_t i = iu; i-- > iv + 1;) loop.push_back(pts[i]);
  }
  loop.push_back(ends.contact_v);
  double twice = 0;
  for (std::size_t i = 0; i < loop.size(); ++i) {
    const Point& q0 = loop[i];
    const Point& q1 = loop[(i + 1) % loop.size()];
    twice += q0.x * q1.y - q0.y * q1.x;
  }
  return std::abs(twice) / 2;
}

double tangent_lengths(const Curve& curve) {
  const ArcEnds ends = arc_ends(curve);
  if (!std::isfinite(ends.contact_u.y) || !std::isfinite(ends.contact_v.x)) {
    throw UnsupportedOperation("a tangent segment of " +
                               std::string(curve.name()) + " is unbounded");
  }
  // Lattice length equals Euclidean length for the axis normals.
  return (curve.gamma(0, 1) - ends.contact_u.y) +
         (curve.gamma(1, 0) - ends.contact_v.x);
}

double mixed_volume_oracle(const Curve& f, const Curve& g,
                           const QuadratureSpec& spec) {
  require_certified(f, "mixed volume");
  require_certified(g, "mixed volume");
  const Vec2<LD> pf = corner(f);
  const Vec2<LD> pg = corner(g);
  const double sum = support_loop(
      [&](double c, double s) { return f.gamma_ext(c, s) + g.gamma_ext(c, s); },
      [&](double c, double s) {
        const Vec2<LD> a = f.tangency(c, s);
        const Vec2<LD> b = g.tangency(c, s);
        return Vec2<LD>{a.x + b.x, a.y + b.y};
      },
      Vec2<LD>{pf.x + pg.x, pf.y + pg.y}, 0.0, pi / 2, spec);
  const double sf = curvilinear_triangle_signed(f, spec);
  const double sg = curvilinear_triangle_signed(g, spec);
  // The oriented areas are negative for this loop orientation.
  return -(sum - sf - sg) / 2;
}

double subtree_region_area(const Curve& curve, const UnimodularPair& p,
                           const QuadratureSpec& spec) {
  require_certified(curve, "subtree region area");
  const LD a = static_cast<LD>(p.a());
  const LD b = static_cast<LD>(p.b());
  const LD c = static_cast<LD>(p.c());
  const LD d = static_cast<LD>(p.d());
  const LD gu = curve.gamma_ext(a, b);
  const LD gv = curve.gamma_ext(c, d);
  // det = 1, so the inverse of (a b; c d) is (d -b; -c a).
  const Vec2<LD> corner_uv{d * gu - b * gv, -c * gu + a * gv};
  const double theta0 = std::atan2(static_cast<double>(p.b()),
                                   static_cast<double>(p.a()));
  const double theta1 = std::atan2(static_cast<double>(p.d()),
                                   static_cast<double>(p.c()));
  return std::abs(support_loop(
      [&](double cs, double sn) { return curve.gamma_ext(cs, sn); },
      [&](double cs, double sn) { return curve.tangency(cs, sn); }, corner_uv,
      theta0, theta1, spec));
}

std::vector<Point> sample_arc(const Curve& curve, std::size_t count) {
  const auto pieces = arc_pieces(curve);
  std::vector<Point> out;
  const std::size_t per = std::max<std::size_t>(2, count / pieces.size());
  for (const ArcPiece& piece : pieces) {
    for (std::size_t i = 0; i < per; ++i) {
      const double t =
          piece.t0 + (piece.t1 - piece.t0) * (static_cast<double>(i) + 0.5) /
                         static_cast<double>(per);
      out.push_back(piece.at(t));
    }
  }
  return out;
}

}  // namespace sl2sum::geomoracle
