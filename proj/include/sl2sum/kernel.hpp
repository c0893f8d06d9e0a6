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

// Tree traversal kernels for sums over the positive part of SL(2, Z).
//
// traverse_serial is the reference: one depth-first walk from the root.
// traverse_parallel cuts the tree at a fixed seed depth, walks the subtrees
// below the cut with OpenMP, and merges their partial sums in subtree order,
// so its result does not depend on the number of threads. Each subtree may
// spend the whole remaining budget; the merged result is flagged exhausted
// when any subtree ran out or the total passes the budget.
//
// A Visitor provides
//   NodeTerm evaluate(const UnimodularPair&) const;
//   double subtree_tail(const UnimodularPair&, const NodeTerm&) const;
// where subtree_tail bounds (or estimates) the magnitude of everything the
// walk leaves out below and including a pruned node.

#pragma once

#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "sl2sum/lattice.hpp"

namespace sl2sum::kernel {

using lattice::UnimodularPair;

enum class Accumulation { compensated, plain };

// Neumaier summation, or plain summation when asked.
class Accumulator {
 public:
  explicit Accumulator(Accumulation mode = Accumulation::compensated) noexcept
      : mode_(mode) {}

  void add(double x) noexcept {
    const double t = sum_ + x;
    if (mode_ == Accumulation::compensated) {
      if (std::abs(sum_) >= std::abs(x)) {
        comp_ += (sum_ - t) + x;
      } else {
        comp_ += (x - t) + sum_;
      }
    }
    sum_ = t;
  }

  void merge(const Accumulator& other) noexcept {
    add(other.sum_);
    add(other.comp_);
  }

  double value() const noexcept { return sum_ + comp_; }

 private:
  Accumulation mode_;
  double sum_ = 0;
  double comp_ = 0;
};

struct NodeTerm {
  double magnitude = 0;     // compared against the pruning threshold
  double contribution = 0;  // what the node adds to the sum
};

struct TraversalLimits {
  double prune_epsilon = 1e-9;
  std::uint64_t depth_cap = std::uint64_t{1} << 24;
  std::uint64_t node_budget = 100'000'000;
  Accumulation accumulation = Accumulation::compensated;
};

struct Partial {
  explicit Partial(Accumulation mode = Accumulation::compensated) noexcept
      : value(mode), tail(mode) {}

  Accumulator value;
  Accumulator tail;
  std::uint64_t nodes_used = 0;
  std::uint64_t truncated_subtrees = 0;
  std::uint64_t overflow_truncations = 0;
  bool budget_exhausted = false;

  void merge(const Partial& o) noexcept {
    value.merge(o.value);
    tail.merge(o.tail);
    nodes_used += o.nodes_used;
    truncated_subtrees += o.truncated_subtrees;
    overflow_truncations += o.overflow_truncations;
    budget_exhausted = budget_exhausted || o.budget_exhausted;
  }
};

struct SubtreeRoot {
  UnimodularPair pair;
  std::uint64_t depth;
};

// Called after each merged piece with (nodes so far, partial value so far).
using PartialSink = std::function<void(std::uint64_t, double)>;

namespace detail {

template <class Visitor>
void truncate(const Visitor& vis, const UnimodularPair& p, const NodeTerm& t,
              Partial& out) {
  out.tail.add(vis.subtree_tail(p, t));
  ++out.truncated_subtrees;
}

}  // namespace detail

// Depth-first walk of the subtree at `start`. Children that would land at
// `split_depth` go to `frontier` instead of being walked, when it is given.
template <class Visitor>
Partial traverse_subtree(const Visitor& vis, const SubtreeRoot& start,
                         const TraversalLimits& lim, std::uint64_t budget,
                         std::uint64_t split_depth = 0,
                         std::vector<SubtreeRoot>* frontier = nullptr) {
  Partial out(lim.accumulation);
  std::vector<SubtreeRoot> stack;
  stack.push_back(start);
  while (!stack.empty()) {
    const SubtreeRoot item = stack.back();
    stack.pop_back();
    const NodeTerm t = vis.evaluate(item.pair);
    if (t.magnitude < lim.prune_epsilon) {
      detail::truncate(vis, item.pair, t, out);
      continue;
    }
    if (out.nodes_used >= budget) {
      out.budget_exhausted = true;
      break;
    }
    out.value.add(t.contribution);
    ++out.nodes_used;

    UnimodularPair left = item.pair;
    UnimodularPair right = item.pair;
    if (!lattice::try_children(item.pair, left, right)) {
      ++out.overflow_truncations;
      continue;
    }
    const std::uint64_t child_depth = item.depth + 1;
    if (item.depth >= lim.depth_cap) {
      detail::truncate(vis, left, vis.evaluate(left), out);
      detail::truncate(vis, right, vis.evaluate(right), out);
      continue;
    }
    if (frontier != nullptr && child_depth == split_depth) {
      frontier->push_back({left, child_depth});
      frontier->push_back({right, child_depth});
      continue;
    }
    stack.push_back({right, child_depth});
    stack.push_back({left, child_depth});
  }
  return out;
}

template <class Visitor>
Partial traverse_serial(const Visitor& vis, const TraversalLimits& lim) {
  return traverse_subtree(vis, SubtreeRoot{lattice::root(), 0}, lim,
                          lim.node_budget);
}

// threads <= 0 uses the OpenMP default.
template <class Visitor>
Partial traverse_parallel(const Visitor& vis, const TraversalLimits& lim,
                          unsigned seed_depth, int threads,
                          const PartialSink* sink = nullptr) {
  std::vector<SubtreeRoot> frontier;
  const SubtreeRoot top_root{lattice::root(), 0};
  Partial total =
      seed_depth == 0
          ? Partial(lim.accumulation)
          : traverse_subtree(vis, top_root, lim, lim.node_budget, seed_depth,
                             &frontier);
  if (seed_depth == 0) frontier.push_back(top_root);
  if (sink != nullptr && total.nodes_used > 0) {
    (*sink)(total.nodes_used, total.value.value());
  }
  if (total.budget_exhausted || frontier.empty()) return total;

  const std::uint64_t remaining = lim.node_budget - total.nodes_used;
  const auto n = static_cast<std::int64_t>(frontier.size());
  std::vector<Partial> parts(frontier.size(), Partial(lim.accumulation));
  std::vector<std::exception_ptr> errors(frontier.size());

#ifdef _OPENMP
  const int team = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(team)
#else
  (void)threads;
#endif
  for (std::int64_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      parts[k] = traverse_subtree(vis, frontier[k], lim, remaining);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }

  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  for (const Partial& p : parts) {
    total.merge(p);
    if (sink != nullptr) (*sink)(total.nodes_used, total.value.value());
  }
  if (total.nodes_used > lim.node_budget) total.budget_exhausted = true;
  return total;
}

}  // namespace sl2sum::kernel
