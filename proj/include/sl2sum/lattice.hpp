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

// Exact enumeration of the positive part of SL(2, Z).
//
// A node is the matrix (a b; c d) with ad - bc = 1 and nonnegative entries,
// read as the row vectors u = (a, b) and v = (c, d). The nodes form the
// Stern-Brocot tree rooted at the identity: the left child refines toward u,
// the right child toward v, and every node is reached by exactly one path.

#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <vector>

namespace sl2sum::lattice {

// Checked 64-bit arithmetic; throws ArithmeticOverflow.
std::int64_t checked_add(std::int64_t x, std::int64_t y);
std::int64_t checked_mul(std::int64_t x, std::int64_t y);

struct PrimitiveVector {
  std::int64_t v1 = 0;
  std::int64_t v2 = 0;

  friend bool operator==(const PrimitiveVector&,
                         const PrimitiveVector&) = default;
};

// Throws InvalidInput unless v is nonnegative, nonzero and gcd(v1, v2) = 1.
PrimitiveVector make_primitive(std::int64_t v1, std::int64_t v2);

class UnimodularPair {
 public:
  // Validates every invariant; throws InvalidInput on violation.
  UnimodularPair(std::int64_t a, std::int64_t b, std::int64_t c,
                 std::int64_t d);

  std::int64_t a() const noexcept { return a_; }
  std::int64_t b() const noexcept { return b_; }
  std::int64_t c() const noexcept { return c_; }
  std::int64_t d() const noexcept { return d_; }

  // ad - bc, computed with overflow checks. Always 1 for a constructed pair.
  std::int64_t determinant() const;

  friend bool operator==(const UnimodularPair&,
                         const UnimodularPair&) = default;

  // Skips validation. Only for callers that derive the entries from an
  // already valid pair by a determinant-preserving step.
  static UnimodularPair unchecked(std::int64_t a, std::int64_t b,
                                  std::int64_t c, std::int64_t d) noexcept {
    return UnimodularPair(a, b, c, d, Unchecked{});
  }

 private:
  struct Unchecked {};
  UnimodularPair(std::int64_t a, std::int64_t b, std::int64_t c,
                 std::int64_t d, Unchecked) noexcept
      : a_(a), b_(b), c_(c), d_(d) {}

  std::int64_t a_, b_, c_, d_;
};

struct UnimodularPairHash {
  std::size_t operator()(const UnimodularPair& p) const noexcept;
};

UnimodularPair root() noexcept;

struct Children {
  UnimodularPair left;
  UnimodularPair right;
};

// Left child (a, b, a+c, b+d), right child (a+c, b+d, c, d).
Children children(const UnimodularPair& p);

// Non-throwing variant used by the traversal kernels: false on overflow.
inline bool try_children(const UnimodularPair& p, UnimodularPair& left,
                         UnimodularPair& right) noexcept {
  std::int64_t m1 = 0;
  std::int64_t m2 = 0;
  if (__builtin_add_overflow(p.a(), p.c(), &m1) ||
      __builtin_add_overflow(p.b(), p.d(), &m2)) {
    return false;
  }
  left = UnimodularPair::unchecked(p.a(), p.b(), m1, m2);
  right = UnimodularPair::unchecked(m1, m2, p.c(), p.d());
  return true;
}

PrimitiveVector mediant(const UnimodularPair& p);

// The unique pair whose mediant is v. Descends with batched Euclidean steps,
// so the cost is logarithmic in max(v1, v2).
// Throws InvalidInput for a non-primitive v, DomainError for (1,0) and (0,1).
UnimodularPair locate(const PrimitiveVector& v);

// Number of edges from the root to locate(v).
std::uint64_t depth_of(const PrimitiveVector& v);

enum class TraversalOrder { depth_first, breadth_first };

// Pull-style stream over the tree, starting at the root. Children are
// visited left before right. A node whose children overflow is not expanded;
// the stream records that in overflow_truncations().
class Enumerator {
 public:
  Enumerator(TraversalOrder order, std::uint64_t budget);

  // Next pair, or nullopt once the budget is spent.
  std::optional<UnimodularPair> next();

  // Depth of the pair most recently returned by next().
  unsigned last_depth() const noexcept { return last_depth_; }
  std::uint64_t yielded() const noexcept { return yielded_; }
  std::uint64_t overflow_truncations() const noexcept { return overflow_; }

  // Drops the subtree below the pair most recently returned by next().
  void skip_children() noexcept { skip_ = true; }

 private:
  struct Entry {
    UnimodularPair pair;
    unsigned depth;
  };
  void expand_pending();

  TraversalOrder order_;
  std::uint64_t budget_;
  std::uint64_t yielded_ = 0;
  std::uint64_t overflow_ = 0;
  std::deque<Entry> frontier_;
  std::optional<Entry> pending_;
  unsigned last_depth_ = 0;
  bool skip_ = false;
};

std::vector<UnimodularPair> enumerate(TraversalOrder order,
                                      std::uint64_t budget);

}  // namespace sl2sum::lattice
