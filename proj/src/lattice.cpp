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

#include "sl2sum/lattice.hpp"

#include <numeric>
#include <string>

#include "sl2sum/errors.hpp"

namespace sl2sum::lattice {

std::int64_t checked_add(std::int64_t x, std::int64_t y) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(x, y, &r)) {
    throw ArithmeticOverflow("integer addition overflows 64 bits");
  }
  return r;
}

std::int64_t checked_mul(std::int64_t x, std::int64_t y) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(x, y, &r)) {
    throw ArithmeticOverflow("integer multiplication overflows 64 bits");
  }
  return r;
}

PrimitiveVector make_primitive(std::int64_t v1, std::int64_t v2) {
  if (v1 < 0 || v2 < 0) {
    throw InvalidInput("primitive vector must be nonnegative");
  }
  if (std::gcd(v1, v2) != 1) {
    throw InvalidInput("vector (" + std::to_string(v1) + ", " +
                       std::to_string(v2) + ") is not primitive");
  }
  return {v1, v2};
}

UnimodularPair::UnimodularPair(std::int64_t a, std::int64_t b, std::int64_t c,
                               std::int64_t d)
    : a_(a), b_(b), c_(c), d_(d) {
  if (a < 0 || b < 0 || c < 0 || d < 0) {
    throw InvalidInput("unimodular pair entries must be nonnegative");
  }
  std::int64_t det = 0;
  try {
    det = determinant();
  } catch (const ArithmeticOverflow&) {
    throw InvalidInput("unimodular pair determinant overflows");
  }
  if (det != 1) {
    throw InvalidInput("unimodular pair must satisfy ad - bc = 1");
  }
}

std::int64_t UnimodularPair::determinant() const {
  std::int64_t ad = checked_mul(a_, d_);
  std::int64_t bc = checked_mul(b_, c_);
  std::int64_t r = 0;
  if (__builtin_sub_overflow(ad, bc, &r)) {
    throw ArithmeticOverflow("determinant overflows 64 bits");
  }
  return r;
}

std::size_t UnimodularPairHash::operator()(
    const UnimodularPair& p) const noexcept {
  // splitmix-style mixing of the four entries
  auto mix = [](std::uint64_t h, std::uint64_t x) {
    h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= h >> 31;
    h *= 0xbf58476d1ce4e5b9ULL;
    return h;
  };
  std::uint64_t h = 0;
  h = mix(h, static_cast<std::uint64_t>(p.a()));
  h = mix(h, static_cast<std::uint64_t>(p.b()));
  h = mix(h, static_cast<std::uint64_t>(p.c()));
  h = mix(h, static_cast<std::uint64_t>(p.d()));
  return static_cast<std::size_t>(h);
}

UnimodularPair root() noexcept { return UnimodularPair::unchecked(1, 0, 0, 1); }

Children children(const UnimodularPair& p) {
  std::int64_t m1 = checked_add(p.a(), p.c());
  std::int64_t m2 = checked_add(p.b(), p.d());
  return {UnimodularPair::unchecked(p.a(), p.b(), m1, m2),
          UnimodularPair::unchecked(m1, m2, p.c(), p.d())};
}

PrimitiveVector mediant(const UnimodularPair& p) {
  return {checked_add(p.a(), p.c()), checked_add(p.b(), p.d())};
}

namespace {

// Writes v = alpha * u + beta * w in the basis of the current node and runs
// the subtractive Euclidean algorithm on (alpha, beta) in batches. Each
// left step replaces w by u + w, each right step replaces u by u + w.
template <class OnStep>
UnimodularPair descend(const PrimitiveVector& v, OnStep on_step) {
  if (v.v1 < 0 || v.v2 < 0 || std::gcd(v.v1, v.v2) != 1) {
    throw InvalidInput("locate requires a primitive nonnegative vector");
  }
  if ((v.v1 == 1 && v.v2 == 0) || (v.v1 == 0 && v.v2 == 1)) {
    throw DomainError("(1,0) and (0,1) are not mediants of any pair");
  }
  std::int64_t a = 1, b = 0, c = 0, d = 1;
  std::int64_t alpha = v.v1;
  std::int64_t beta = v.v2;
  while (!(alpha == 1 && beta == 1)) {
    if (alpha > beta) {
      std::int64_t q = alpha / beta;
      std::int64_t r = alpha % beta;
      std::int64_t k = (r == 0) ? q - 1 : q;
      c = checked_add(c, checked_mul(k, a));
      d = checked_add(d, checked_mul(k, b));
      alpha -= k * beta;
      on_step(k);
    } else {
      std::int64_t q = beta / alpha;
      std::int64_t r = beta % alpha;
      std::int64_t k = (r == 0) ? q - 1 : q;
      a = checked_add(a, checked_mul(k, c));
      b = checked_add(b, checked_mul(k, d));
      beta -= k * alpha;
      on_step(k);
    }
  }
  return UnimodularPair::unchecked(a, b, c, d);
}

}  // namespace

UnimodularPair locate(const PrimitiveVector& v) {
  return descend(v, [](std::int64_t) {});
}

std::uint64_t depth_of(const PrimitiveVector& v) {
  std::uint64_t depth = 0;
  descend(v, [&](std::int64_t k) { depth += static_cast<std::uint64_t>(k); });
  return depth;
}

Enumerator::Enumerator(TraversalOrder order, std::uint64_t budget)
    : order_(order), budget_(budget) {
  if (budget == 0) {
    throw InvalidInput("enumeration budget must be at least 1");
  }
  frontier_.push_back({root(), 0});
}

void Enumerator::expand_pending() {
  if (!pending_) return;
  Entry e = *pending_;
  pending_.reset();
  if (skip_) {
    skip_ = false;
    return;
  }
  UnimodularPair left = root();
  UnimodularPair right = root();
  if (!try_children(e.pair, left, right)) {
    ++overflow_;
    return;
  }
  if (order_ == TraversalOrder::depth_first) {
    frontier_.push_back({right, e.depth + 1});
    frontier_.push_back({left, e.depth + 1});
  } else {
    frontier_.push_back({left, e.depth + 1});
    frontier_.push_back({right, e.depth + 1});
  }
}

std::optional<UnimodularPair> Enumerator::next() {
  expand_pending();
  if (yielded_ >= budget_ || frontier_.empty()) return std::nullopt;
  Entry e = frontier_.front();
  if (order_ == TraversalOrder::depth_first) {
    e = frontier_.back();
    frontier_.pop_back();
  } else {
    frontier_.pop_front();
  }
  pending_ = e;
  last_depth_ = e.depth;
  ++yielded_;
  return e.pair;
}

std::vector<UnimodularPair> enumerate(TraversalOrder order,
                                      std::uint64_t budget) {
  Enumerator it(order, budget);
  std::vector<UnimodularPair> out;
  while (auto p = it.next()) out.push_back(*p);
  return out;
}

}  // namespace sl2sum::lattice
