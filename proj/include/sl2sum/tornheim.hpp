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

// Mordell-Tornheim sums over coprime pairs:
//   C(s) = sum over b, d >= 1 with gcd(b, d) = 1 of 1 / (b d (b + d))^s.
// Grouping all pairs by g = gcd(b, d) gives W(s) = zeta(3s) C(s), where W
// is the same sum over all pairs. The 2^s-prefixed variant is 2^s C(s).

#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "sl2sum/series.hpp"

namespace sl2sum::tornheim {

enum class Mode { direct, zeta };

struct TornheimQuery {
  double s = 2;
  std::uint64_t cutoff = 2000;  // max(b, d) summed exactly in direct mode
  Mode mode = Mode::zeta;

  // Throws DomainError for s <= 2/3, InvalidInput for cutoff < 2.
  void validate() const;
};

// Direct mode sums coprime pairs with max(b, d) <= cutoff and adds 6/pi^2
// times the all-pairs remainder; the added amount is the reported
// (estimated) tail. Zeta mode returns W(s) / zeta(3s); its tail is the
// change in W between two Euler-Maclaurin cut points.
series::SeriesResult tornheim_coprime(const TornheimQuery& q);

// W(s) by direct summation over b, d < n0 and two-dimensional
// Euler-Maclaurin beyond. Throws DomainError for s <= 2/3.
double all_pairs_sum(double s, std::uint64_t n0 = 32);

// Sum over pairs with max(b, d) >= n of 1 / (b d (b + d))^s.
double all_pairs_remainder(double s, std::uint64_t n);

// Riemann zeta for x > 1: 10^4 terms plus an Euler-Maclaurin tail.
// Throws DomainError for x <= 1.
double zeta(double x);

// Every coprime (b, d) with 1 <= b, d <= cutoff exactly once, as the
// mediants of tree nodes. A subtree is skipped once its mediant leaves the
// box, since mediants grow componentwise down the tree.
void coprime_pairs_via_tree(
    std::uint64_t cutoff,
    const std::function<void(std::uint64_t, std::uint64_t)>& emit);

std::vector<std::pair<std::uint64_t, std::uint64_t>> coprime_pairs(
    std::uint64_t cutoff);

}  // namespace sl2sum::tornheim
