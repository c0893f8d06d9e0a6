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

#include "sl2sum/series.hpp"

#include <cmath>
#include <string>

#include "sl2sum/errors.hpp"
#include "sl2sum/geomoracle.hpp"

namespace sl2sum::series {

namespace {

using kernel::NodeTerm;
using kernel::Partial;
using kernel::TraversalLimits;

double int_pow(double x, int n) {
  double r = 1;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

bool is_small_integer(double s) {
  return s == std::floor(s) && s >= 1 && s <= 64;
}

template <class Model>
double triangle_bound(const Model& m, const UnimodularPair& p, int s) {
  const geomoracle::TangentDefects d = geomoracle::tangent_defects(m, p);
  if (s == 1) return static_cast<double>(std::abs(d.along_u + d.along_v));
  return static_cast<double>(std::abs(d.along_u * d.along_v));
}

template <class Model>
class PowerVisitor {
 public:
  PowerVisitor(const Model& m, double s)
      : m_(m),
        s_(s),
        integer_(is_small_integer(s)),
        certified_(Model::convexity == support::Convexity::certified &&
                   (s == 1 || s == 2)) {}

  NodeTerm evaluate(const UnimodularPair& p) const {
    const double f = static_cast<double>(m_.difference(p));
    if (integer_) return {std::abs(f), int_pow(f, static_cast<int>(s_))};
    if (f < 0) {
      throw DomainError("negative term " + std::to_string(f) +
                        " under non-integer exponent");
    }
    return {f, std::pow(f, s_)};
  }

  double subtree_tail(const UnimodularPair& p, const NodeTerm& t) const {
    if (certified_) return triangle_bound(m_, p, static_cast<int>(s_));
    return std::pow(t.magnitude, s_);
  }

  bool certified() const { return certified_; }

 private:
  const Model& m_;
  double s_;
  bool integer_;
  bool certified_;
};

class ArctanVisitor {
 public:
  NodeTerm evaluate(const UnimodularPair& p) const {
    const double t = cycloid_arctan_term(p);
    return {2 * std::abs(t), 4 * t * t};
  }
  double subtree_tail(const UnimodularPair& p, const NodeTerm&) const {
    return triangle_bound(support::Cycloid{}, p, 2);
  }
};

template <class F, class G>
class MixedVisitor {
 public:
  static constexpr bool certified =
      F::convexity == support::Convexity::certified &&
      G::convexity == support::Convexity::certified;

  MixedVisitor(const F& f, const G& g) : f_(f), g_(g) {}

  NodeTerm evaluate(const UnimodularPair& p) const {
    const double df = static_cast<double>(f_.difference(p));
    const double dg = static_cast<double>(g_.difference(p));
    return {std::max(std::abs(df), std::abs(dg)), 0.5 * df * dg};
  }

  // Cauchy-Schwarz over the subtree.
  double subtree_tail(const UnimodularPair& p, const NodeTerm& t) const {
    if constexpr (certified) {
      return 0.5 * std::sqrt(triangle_bound(f_, p, 2) * triangle_bound(g_, p, 2));
    } else {
      return 0.5 * t.magnitude * t.magnitude;
    }
  }

 private:
  const F& f_;
  const G& g_;
};

TraversalLimits limits_of(const SumControls& c) {
  return {c.prune_epsilon, c.depth_cap, c.node_budget, c.accumulation};
}

template <class Visitor>
Partial run(const Visitor& vis, const SumControls& c, const PartialSink* sink) {
  const TraversalLimits lim = limits_of(c);
  if (c.engine == Engine::serial) {
    Partial out = kernel::traverse_serial(vis, lim);
    if (sink != nullptr) (*sink)(out.nodes_used, out.value.value());
    return out;
  }
  return kernel::traverse_parallel(vis, lim, c.seed_depth, c.threads, sink);
}

SeriesResult finish(const Partial& p, bool certified) {
  SeriesResult r;
  r.value = p.value.value();
  r.nodes_used = p.nodes_used;
  r.truncated_subtrees = p.truncated_subtrees;
  r.overflow_truncations = p.overflow_truncations;
  r.tail_magnitude = p.tail.value();
  if (p.budget_exhausted) {
    r.tail_kind = TailKind::none;
  } else if (certified && p.overflow_truncations == 0) {
    r.tail_kind = TailKind::certified;
  } else {
    r.tail_kind = TailKind::estimated;
  }
  return r;
}

}  // namespace

std::string_view to_string(TailKind k) {
  switch (k) {
    case TailKind::certified:
      return "certified";
    case TailKind::estimated:
      return "estimated";
    case TailKind::none:
      return "none";
  }
  return "none";
}

void SumControls::validate() const {
  if (!(std::isfinite(s) && s > 0)) {
    throw InvalidInput("exponent s must be a positive real");
  }
  if (!(std::isfinite(prune_epsilon) && prune_epsilon >= 0)) {
    throw InvalidInput("prune_epsilon must be finite and nonnegative");
  }
  if (depth_cap < 1) throw InvalidInput("depth_cap must be at least 1");
  if (node_budget < 1) throw InvalidInput("node_budget must be at least 1");
}

double term(const Curve& curve, const UnimodularPair& p) {
  return static_cast<double>(curve.difference(p));
}

SeriesResult sum_power(const Curve& curve, const SumControls& controls,
                       const PartialSink* sink) {
  controls.validate();
  return curve.visit([&](const auto& model) {
    const PowerVisitor vis(model, controls.s);
    return finish(run(vis, controls, sink), vis.certified());
  });
}

double cycloid_arctan_term(const UnimodularPair& p) {
  using LD = long double;
  const LD a = static_cast<LD>(p.a());
  const LD b = static_cast<LD>(p.b());
  const LD c = static_cast<LD>(p.c());
  const LD d = static_cast<LD>(p.d());
  const LD t = a * std::atan2(a, b) + c * std::atan2(c, d) -
               (a + c) * std::atan2(a + c, b + d);
  return static_cast<double>(t);
}

SeriesResult sum_cycloid_arctan(const SumControls& controls,
                                const PartialSink* sink) {
  controls.validate();
  return finish(run(ArctanVisitor{}, controls, sink), true);
}

SeriesResult mixed_sum(const Curve& f, const Curve& g,
                       const SumControls& controls, const PartialSink* sink) {
  controls.validate();
  return std::visit(
      [&](const auto& mf, const auto& mg) {
        const MixedVisitor vis(mf, mg);
        return finish(run(vis, controls, sink), vis.certified);
      },
      f.model(), g.model());
}

double subtree_tail_bound(const Curve& curve, const UnimodularPair& p, int s) {
  if (s != 1 && s != 2) throw InvalidInput("tail bounds exist for s = 1, 2");
  if (curve.convexity() != support::Convexity::certified) {
    throw UnsupportedOperation("tail bound needs a convex-certified curve, got " +
                               std::string(curve.name()));
  }
  if (s == 2) return 2 * geomoracle::subtree_region_area(curve, p);
  return curve.visit([&](const auto& m) { return triangle_bound(m, p, 1); });
}

}  // namespace sl2sum::series
