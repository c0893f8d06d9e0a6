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

// Power sums, mixed sums and the cycloid arctan sum over the tree, with
// pruning and tail accounting.
//
// A node is pruned, together with its subtree, once |term| drops below the
// threshold. For convex-certified curves the tails left behind are bounded
// by the tangent triangles at the pruned nodes, so s = 1 and s = 2 sums
// carry a certified tail. Everything else gets an estimated tail.

#pragma once

#include <cstdint>
#include <string_view>

#include "sl2sum/kernel.hpp"
#include "sl2sum/lattice.hpp"
#include "sl2sum/support.hpp"

namespace sl2sum::series {

using kernel::Accumulation;
using kernel::PartialSink;
using lattice::UnimodularPair;
using support::Curve;

enum class TailKind { certified, estimated, none };

std::string_view to_string(TailKind k);

enum class Engine { parallel, serial };

struct SumControls {
  double s = 2;
  double prune_epsilon = 1e-9;
  std::uint64_t depth_cap = std::uint64_t{1} << 24;
  std::uint64_t node_budget = 100'000'000;
  Accumulation accumulation = Accumulation::compensated;
  Engine engine = Engine::parallel;
  unsigned seed_depth = 6;
  int threads = 0;  // 0: OpenMP default

  // Throws InvalidInput.
  void validate() const;
};

struct SeriesResult {
  double value = 0;
  std::uint64_t nodes_used = 0;
  std::uint64_t truncated_subtrees = 0;
  TailKind tail_kind = TailKind::none;
  double tail_magnitude = 0;
  std::uint64_t overflow_truncations = 0;
};

// gamma(a,b) + gamma(c,d) - gamma(a+c, b+d).
double term(const Curve& curve, const UnimodularPair& p);

// Sum of term^s. Integer s uses the plain power; any other s requires
// term >= 0 at every visited node and throws DomainError otherwise.
// Budget exhaustion returns the partial sum with tail kind none.
SeriesResult sum_power(const Curve& curve, const SumControls& controls,
                       const PartialSink* sink = nullptr);

// a*arctan(a/b) + c*arctan(c/d) - (a+c)*arctan((a+c)/(b+d)), with
// arctan(x/0) = pi/2. Equals -1/2 times the cycloid term.
double cycloid_arctan_term(const UnimodularPair& p);

// Four times the sum of squared arctan terms; controls.s is ignored.
SeriesResult sum_cycloid_arctan(const SumControls& controls,
                                const PartialSink* sink = nullptr);

// Half the sum of term_f * term_g; controls.s is ignored. The tail is
// certified when both curves are.
SeriesResult mixed_sum(const Curve& f, const Curve& g,
                       const SumControls& controls,
                       const PartialSink* sink = nullptr);

// Upper bound on |sum of term^s| over the subtree at p, s in {1, 2}:
// the signed tangent lengths for s = 1 and twice the curvilinear region for
// s = 2 (by quadrature). Throws UnsupportedOperation for curves that are
// not convex-certified and InvalidInput for other s.
double subtree_tail_bound(const Curve& curve, const UnimodularPair& p, int s);

}  // namespace sl2sum::series
