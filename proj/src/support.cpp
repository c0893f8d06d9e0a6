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

#include "sl2sum/support.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "sl2sum/errors.hpp"

namespace sl2sum::support {

namespace detail {

void throw_acos_domain() {
  throw InternalError("arccos argument outside [-1, 1] beyond rounding slack");
}

}  // namespace detail

std::string_view to_string(Convexity c) {
  switch (c) {
    case Convexity::certified:
      return "convex-certified";
    case Convexity::non_convex:
      return "non-convex";
    case Convexity::unknown:
      return "unknown";
  }
  return "unknown";
}

namespace {

using LD = long double;

struct Rows {
  LD a, b, c, d, m1, m2;
};

Rows rows_of(const UnimodularPair& p) {
  LD a = static_cast<LD>(p.a());
  LD b = static_cast<LD>(p.b());
  LD c = static_cast<LD>(p.c());
  LD d = static_cast<LD>(p.d());
  return {a, b, c, d, a + c, b + d};
}

template <class Model>
LD naive_difference(const Model& m, const UnimodularPair& p) {
  Rows r = rows_of(p);
  return m.gamma(r.a, r.b) + m.gamma(r.c, r.d) - m.gamma(r.m1, r.m2);
}

}  // namespace

LD Circle::difference(const UnimodularPair& p) const {
  Rows r = rows_of(p);
  LD nu = std::hypot(r.a, r.b);
  LD nv = std::hypot(r.c, r.d);
  LD nw = std::hypot(r.m1, r.m2);
  LD dot = r.a * r.c + r.b * r.d;
  return LD(2) / ((nu * nv + dot) * (nu + nv + nw));
}

LD Parabola::difference(const UnimodularPair& p) const {
  // The numerator of the exact difference is (ad - bc)^2 = 1.
  Rows r = rows_of(p);
  const LD u = r.a + r.b;
  const LD v = r.c + r.d;
  return LD(1) / (LD(4) * u * v * (u + v));
}

LD Hyperbola::difference(const UnimodularPair& p) const {
  return naive_difference(*this, p);
}

LD Cycloid::difference(const UnimodularPair& p) const {
  return naive_difference(*this, p);
}

LD Tractrix::difference(const UnimodularPair& p) const {
  return naive_difference(*this, p);
}

LD Astroid::difference(const UnimodularPair& p) const {
  return naive_difference(*this, p);
}

// --- sampled curves -------------------------------------------------------

namespace {

double cross(const Point& o, const Point& a, const Point& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

}  // namespace

SampledCurve::SampledCurve(std::vector<Point> points) {
  if (points.size() < 3) {
    throw InvalidInput("sampled curve needs at least 3 points");
  }
  for (const Point& p : points) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw InvalidInput("sampled curve has a non-finite coordinate");
    }
  }
  auto data = std::make_shared<Data>();
  data->points = std::move(points);
  const auto& pts = data->points;

  // Andrew's monotone chain over indices, strict turns only.
  std::vector<std::size_t> order(pts.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return pts[i].x < pts[j].x || (pts[i].x == pts[j].x && pts[i].y < pts[j].y);
  });
  std::vector<std::size_t> hull(2 * order.size());
  std::size_t k = 0;
  for (std::size_t i : order) {
    while (k >= 2 && cross(pts[hull[k - 2]], pts[hull[k - 1]], pts[i]) <= 0) --k;
    hull[k++] = i;
  }
  for (std::size_t t = order.size() - 1, lower = k + 1; t-- > 0;) {
    std::size_t i = order[t];
    while (k >= lower && cross(pts[hull[k - 2]], pts[hull[k - 1]], pts[i]) <= 0)
      --k;
    hull[k++] = i;
  }
  hull.resize(k - 1);
  if (hull.size() < 3) {
    throw InvalidInput("sampled curve is degenerate (collinear samples)");
  }

  const std::size_t m = hull.size();
  data->edge_angle.resize(m);
  for (std::size_t e = 0; e < m; ++e) {
    const Point& p0 = pts[hull[e]];
    const Point& p1 = pts[hull[(e + 1) % m]];
    // outward normal of a CCW edge
    data->edge_angle[e] = std::atan2(-(p1.x - p0.x), p1.y - p0.y);
  }
  data->first_edge = static_cast<std::size_t>(
      std::min_element(data->edge_angle.begin(), data->edge_angle.end()) -
      data->edge_angle.begin());
  data->hull = std::move(hull);
  data_ = std::move(data);
}

std::size_t SampledCurve::argmax_index(double a, double b) const {
  const auto& d = *data_;
  const std::size_t m = d.hull.size();
  const double phi = std::atan2(b, a);
  // Edge angles read from first_edge onward are ascending.
  std::size_t lo = 0;
  std::size_t hi = m;
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (d.edge_angle[(d.first_edge + mid) % m] < phi) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  std::size_t vertex = (d.first_edge + (lo == m ? 0 : lo)) % m;
  // Guard against ties from rounding in the angle comparison.
  auto value = [&](std::size_t h) {
    const Point& p = d.points[d.hull[h]];
    return a * p.x + b * p.y;
  };
  for (;;) {
    std::size_t next = (vertex + 1) % m;
    std::size_t prev = (vertex + m - 1) % m;
    if (value(next) > value(vertex)) {
      vertex = next;
    } else if (value(prev) > value(vertex)) {
      vertex = prev;
    } else {
      break;
    }
  }
  return d.hull[vertex];
}

SampledCurve::Refined SampledCurve::support(double a, double b) const {
  if (!(a >= 0 && b >= 0) || (a == 0 && b == 0)) {
    throw InvalidInput("support direction must be nonnegative and nonzero");
  }
  const auto& pts = data_->points;
  std::size_t i = argmax_index(a, b);
  const Point& p0 = pts[i];
  double g0 = a * p0.x + b * p0.y;
  if (i == 0 || i + 1 == pts.size()) return {g0, p0};
  const Point& pm = pts[i - 1];
  const Point& pp = pts[i + 1];
  double gm = a * pm.x + b * pm.y;
  double gp = a * pp.x + b * pp.y;
  double curv = gm - 2 * g0 + gp;
  if (!(curv < 0)) return {g0, p0};
  double t = std::clamp((gm - gp) / (2 * curv), -0.5, 0.5);
  auto interp = [t](double fm, double f0, double fp) {
    return f0 + t * (fp - fm) / 2 + t * t * (fp - 2 * f0 + fm) / 2;
  };
  Point q{interp(pm.x, p0.x, pp.x), interp(pm.y, p0.y, pp.y)};
  return {a * q.x + b * q.y, q};
}

double SampledCurve::gamma(double a, double b) const {
  return support(a, b).value;
}

Point SampledCurve::tangency(double a, double b) const {
  return support(a, b).point;
}

LD SampledCurve::difference(const UnimodularPair& p) const {
  double a = static_cast<double>(p.a());
  double b = static_cast<double>(p.b());
  double c = static_cast<double>(p.c());
  double d = static_cast<double>(p.d());
  return static_cast<LD>(gamma(a, b)) + static_cast<LD>(gamma(c, d)) -
         static_cast<LD>(gamma(a + c, b + d));
}

namespace {

bool parse_double(std::string_view s, double& out) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

SampledCurve load_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open curve file " + path.string());
  std::vector<Point> pts;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos)
      continue;
    std::replace(line.begin(), line.end(), ';', ',');
    std::replace(line.begin(), line.end(), '\t', ',');
    auto comma = line.find(',');
    double x = 0;
    double y = 0;
    bool ok = comma != std::string::npos &&
              parse_double(std::string_view(line).substr(0, comma), x) &&
              parse_double(std::string_view(line).substr(comma + 1), y);
    if (!ok) {
      if (first) {
        first = false;
        continue;  // header
      }
      throw InvalidInput("malformed CSV row in " + path.string() + ": " + line);
    }
    first = false;
    pts.push_back({x, y});
  }
  return SampledCurve(std::move(pts));
}

SampledCurve load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open curve file " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput("malformed JSON in " + path.string() + ": " + e.what());
  }
  if (!doc.is_array()) {
    throw InvalidInput("curve JSON must be an array of [x, y] pairs");
  }
  std::vector<Point> pts;
  pts.reserve(doc.size());
  for (const auto& item : doc) {
    if (!item.is_array() || item.size() != 2 || !item[0].is_number() ||
        !item[1].is_number()) {
      throw InvalidInput("curve JSON entries must be [x, y] number pairs");
    }
    pts.push_back({item[0].get<double>(), item[1].get<double>()});
  }
  return SampledCurve(std::move(pts));
}

SampledCurve load_sampled(const std::filesystem::path& path) {
  if (path.extension() == ".json") return load_json(path);
  return load_csv(path);
}

// --- type-erased handle ---------------------------------------------------

std::string_view Curve::name() const {
  return visit([](const auto& m) { return m.name; });
}

Convexity Curve::convexity() const {
  return visit([](const auto& m) { return m.convexity; });
}

double Curve::gamma(double a, double b) const {
  return visit([&](const auto& m) { return m.gamma(a, b); });
}

LD Curve::gamma_ext(LD a, LD b) const {
  return visit([&](const auto& m) { return m.gamma(a, b); });
}

Vec2<LD> Curve::tangency(LD a, LD b) const {
  return visit([&](const auto& m) -> Vec2<LD> { return m.tangency(a, b); });
}

LD Curve::difference(const UnimodularPair& p) const {
  return visit([&](const auto& m) { return m.difference(p); });
}

Curve builtin(std::string_view name) {
  if (name == Circle::name) return Curve(Circle{});
  if (name == Parabola::name) return Curve(Parabola{});
  if (name == Hyperbola::name) return Curve(Hyperbola{});
  if (name == Cycloid::name) return Curve(Cycloid{});
  if (name == Tractrix::name) return Curve(Tractrix{});
  if (name == Astroid::name) return Curve(Astroid{});
  throw InvalidInput("unknown curve '" + std::string(name) + "'");
}

std::vector<std::string_view> builtin_names() {
  return {Circle::name,  Parabola::name, Hyperbola::name,
          Cycloid::name, Tractrix::name, Astroid::name};
}

double gamma_circle(double a, double b) { return Circle{}.gamma(a, b); }
double gamma_parabola(double a, double b) { return Parabola{}.gamma(a, b); }
double gamma_hyperbola(double a, double b) { return Hyperbola{}.gamma(a, b); }
double gamma_cycloid(double a, double b) { return Cycloid{}.gamma(a, b); }
double gamma_tractrix(double a, double b) { return Tractrix{}.gamma(a, b); }
double gamma_astroid(double a, double b) { return Astroid{}.gamma(a, b); }
double gamma_sampled(const SampledCurve& curve, double a, double b) {
  return curve.gamma(a, b);
}

}  // namespace sl2sum::support
