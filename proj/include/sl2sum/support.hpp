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

// Support values of the built-in curves and of sampled curves.
//
// gamma(a, b) is the constant of the tangent line a*x + b*y = gamma(a, b)
// with normal (a, b); tangency(a, b) is the point where that line touches
// the curve. Both are positively homogeneous in (a, b), of degree 1 and 0.

#pragma once

#include <cmath>
#include <concepts>
#include <filesystem>
#include <limits>
#include <memory>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sl2sum/lattice.hpp"

namespace sl2sum::support {

using lattice::UnimodularPair;

// certified: every term has one sign and tangent triangles nest down the
// tree, so subtree tails are bounded geometrically.
enum class Convexity { certified, non_convex, unknown };

std::string_view to_string(Convexity c);

template <class T>
struct Vec2 {
  T x{};
  T y{};
};

using Point = Vec2<double>;

namespace detail {

[[noreturn]] void throw_acos_domain();

template <class T>
T clamped_acos(T arg) {
  constexpr T slack = static_cast<T>(1e-12);
  if (arg > T(1)) {
    if (arg > T(1) + slack) throw_acos_domain();
    arg = T(1);
  } else if (arg < T(-1)) {
    if (arg < T(-1) - slack) throw_acos_domain();
    arg = T(-1);
  }
  return std::acos(arg);
}

}  // namespace detail

// x^2 + y^2 = 1.
struct Circle {
  static constexpr std::string_view name = "circle";
  static constexpr Convexity convexity = Convexity::certified;

  template <class T>
  T gamma(T a, T b) const {
    return std::hypot(a, b);
  }
  template <class T>
  Vec2<T> tangency(T a, T b) const {
    T r = std::hypot(a, b);
    return {a / r, b / r};
  }
  // 2 / ((|u||v| + u.v) (|u| + |v| + |u+v|)), exact when ad - bc = 1.
  long double difference(const UnimodularPair& p) const;
};

// y = 1 - (x - y)^2.
struct Parabola {
  static constexpr std::string_view name = "parabola";
  static constexpr Convexity convexity = Convexity::certified;

  template <class T>
  T gamma(T a, T b) const {
    return a * a / (T(4) * (a + b)) + a + b;
  }
  template <class T>
  Vec2<T> tangency(T a, T b) const {
    T s2 = T(4) * (a + b) * (a + b);
    return {T(1) + (a * a + T(2) * a * b) / s2, T(1) - a * a / s2};
  }
  // 1 / (4 (a+b) (c+d) (a+b+c+d)).
  long double difference(const UnimodularPair& p) const;
};

// y^2 - (x - 2y)^2 = 1.
struct Hyperbola {
  static constexpr std::string_view name = "hyperbola";
  static constexpr Convexity convexity = Convexity::certified;

  // (2a+b)^2 - a^2 is factored as (a+b)(3a+b), which is never negative.
  template <class T>
  T gamma(T a, T b) const {
    return -std::sqrt((a + b) * (T(3) * a + b));
  }
  template <class T>
  Vec2<T> tangency(T a, T b) const {
    T r = std::sqrt((a + b) * (T(3) * a + b));
    return {-(T(3) * a + T(2) * b) / r, -(T(2) * a + b) / r};
  }
  long double difference(const UnimodularPair& p) const;
};

// The cycloid arc traced by the tangent lines of
// gamma = a * arccos((a^2 - b^2) / (a^2 + b^2)) + 2b.
struct Cycloid {
  static constexpr std::string_view name = "cycloid";
  static constexpr Convexity convexity = Convexity::certified;

  template <class T>
  T gamma(T a, T b) const {
    T r2 = a * a + b * b;
    return a * detail::clamped_acos((a * a - b * b) / r2) + T(2) * b;
  }
  template <class T>
  Vec2<T> tangency(T a, T b) const {
    T r2 = a * a + b * b;
    return {detail::clamped_acos((a * a - b * b) / r2) - T(2) * a * b / r2,
            T(2) + T(2) * a * a / r2};
  }
  long double difference(const UnimodularPair& p) const;
};

// gamma = b ln(sqrt(a^2 + b^2) / b), continued by 0 at b = 0. The envelope
// has a cusp at normal (1, 1) and the y-axis as asymptote.
struct Tractrix {
  static constexpr std::string_view name = "tractrix";
  static constexpr Convexity convexity = Convexity::non_convex;

  template <class T>
  T gamma(T a, T b) const {
    if (b == T(0)) return T(0);
    return b * std::log1p((a / b) * (a / b)) / T(2);
  }
  template <class T>
  Vec2<T> tangency(T a, T b) const {
    if (b == T(0)) return {T(0), std::numeric_limits<T>::infinity()};
    T r2 = a * a + b * b;
    return {a * b / r2, std::log1p((a / b) * (a / b)) / T(2) - a * a / r2};
  }
  long double difference(const UnimodularPair& p) const;
};

// x^(2/3) + y^(2/3) = 1.
struct Astroid {
  static constexpr std::string_view name = "astroid";
  static constexpr Convexity convexity = Convexity::non_convex;

  template <class T>
  T gamma(T a, T b) const {
    return a * b / std::hypot(a, b);
  }
  template <class T>
  Vec2<T> tangency(T a, T b) const {
    T r = std::hypot(a, b);
    T r3 = r * r * r;
    return {b * b * b / r3, a * a * a / r3};
  }
  long double difference(const UnimodularPair& p) const;
};

// A curve given by ordered samples. gamma is the maximum of a*x + b*y over
// the samples, refined by a parabola through the maximizing sample and its
// two neighbours. Lookups go through the convex hull in O(log n).
class SampledCurve {
 public:
  static constexpr std::string_view name = "sampled";
  static constexpr Convexity convexity = Convexity::unknown;

  // Throws InvalidInput for fewer than 3 points, non-finite coordinates, or
  // samples that are all collinear.
  explicit SampledCurve(std::vector<Point> points);

  std::span<const Point> points() const noexcept { return data_->points; }

  double gamma(double a, double b) const;
  Point tangency(double a, double b) const;

  // Integer arguments resolve to the double overloads above.
  template <std::floating_point T>
  T gamma(T a, T b) const {
    return static_cast<T>(gamma(static_cast<double>(a), static_cast<double>(b)));
  }
  template <std::floating_point T>
  Vec2<T> tangency(T a, T b) const {
    Point p = tangency(static_cast<double>(a), static_cast<double>(b));
    return {static_cast<T>(p.x), static_cast<T>(p.y)};
  }
  long double difference(const UnimodularPair& p) const;

 private:
  struct Refined {
    double value;
    Point point;
  };
  Refined support(double a, double b) const;
  std::size_t argmax_index(double a, double b) const;

  struct Data {
    std::vector<Point> points;
    std::vector<std::size_t> hull;        // indices into points, CCW
    std::vector<double> edge_angle;       // outward normal angle of hull edge
    std::size_t first_edge = 0;           // edge with the smallest angle
  };
  std::shared_ptr<const Data> data_;
};

// Reads two columns x,y (a non-numeric first line is taken as a header).
SampledCurve load_csv(const std::filesystem::path& path);
// Reads a JSON array of [x, y] pairs.
SampledCurve load_json(const std::filesystem::path& path);
// Dispatches on the file extension (.json, otherwise CSV).
SampledCurve load_sampled(const std::filesystem::path& path);

using CurveModel =
    std::variant<Circle, Parabola, Hyperbola, Cycloid, Tractrix, Astroid,
                 SampledCurve>;

// Type-erased handle over one curve model. Immutable; safe to share.
class Curve {
 public:
  Curve(CurveModel model) : model_(std::move(model)) {}  // NOLINT

  std::string_view name() const;
  Convexity convexity() const;
  bool is_sampled() const {
    return std::holds_alternative<SampledCurve>(model_);
  }

  double gamma(double a, double b) const;
  long double gamma_ext(long double a, long double b) const;
  Vec2<long double> tangency(long double a, long double b) const;

  // gamma(u) + gamma(v) - gamma(u + v), in the most stable form known.
  long double difference(const UnimodularPair& p) const;

  const CurveModel& model() const noexcept { return model_; }

  template <class F>
  decltype(auto) visit(F&& f) const {
    return std::visit(std::forward<F>(f), model_);
  }

 private:
  CurveModel model_;
};

// Built-in curve by name; throws InvalidInput for unknown names.
Curve builtin(std::string_view name);
std::vector<std::string_view> builtin_names();

// Free-function evaluators for the built-ins.
double gamma_circle(double a, double b);
double gamma_parabola(double a, double b);
double gamma_hyperbola(double a, double b);
double gamma_cycloid(double a, double b);
double gamma_tractrix(double a, double b);
double gamma_astroid(double a, double b);
double gamma_sampled(const SampledCurve& curve, double a, double b);

}  // namespace sl2sum::support
