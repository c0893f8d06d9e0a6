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
#include <set>
#include <vector>

#include "sl2sum/errors.hpp"
#include "sl2sum/series.hpp"
#include "sl2sum/tornheim.hpp"

using namespace sl2sum;
using namespace sl2sum::tornheim;
using std::numbers::pi;

namespace {

// Euler's totient for 1..n by sieve.
std::vector<std::uint64_t> totients(std::uint64_t n) {
  std::vector<std::uint64_t> phi(n + 1);
  std::iota(phi.begin(), phi.end(), 0);
  for (std::uint64_t p = 2; p <= n; ++p) {
    if (phi[p] != p) continue;
    for (std::uint64_t m = p; m <= n; m += p) phi[m] -= phi[m] / p;
  }
  return phi;
}

TornheimQuery query(double s, Mode mode, std::uint64_t cutoff = 2000) {
  TornheimQuery q;
  q.s = s;
  q.mode = mode;
  q.cutoff = cutoff;
  return q;
}

}  // namespace

TEST_CASE("zeta against closed forms") {
  CHECK(std::abs(zeta(2) - pi * pi / 6) < 1e-13);
  CHECK(std::abs(zeta(4) - std::pow(pi, 4) / 90) < 1e-13);
  CHECK(std::abs(zeta(6) - std::pow(pi, 6) / 945) < 1e-13);
  CHECK(std::abs(zeta(3) - 1.2020569031595942854) < 1e-13);
  CHECK_THROWS_AS(zeta(1), DomainError);
}

TEST_CASE("all-pairs sums: W(1) = 2 zeta(3), W(2) = zeta(6) / 3") {
  CHECK(std::abs(all_pairs_sum(1) - 2 * zeta(3)) < 1e-13);
  CHECK(std::abs(all_pairs_sum(2) - zeta(6) / 3) < 1e-14);
  // Independent of the Euler-Maclaurin cut point.
  for (double s : {0.8, 1.0, 1.5, 2.0, 3.0}) {
    CHECK(std::abs(all_pairs_sum(s, 24) - all_pairs_sum(s, 64)) <
          1e-13 * all_pairs_sum(s, 64));
  }
}

TEST_CASE("the Euler-Maclaurin remainder matches brute force") {
  // Pairs with max(b, d) >= 50, summed directly out to 4000 plus a tiny
  // remainder estimate beyond.
  const double s = 2;
  double brute = 0;
  for (int b = 4000; b >= 1; --b) {
    for (int d = 4000; d >= 1; --d) {
      if (std::max(b, d) < 50) continue;
      brute += std::pow(double(b) * d * (b + d), -s);
    }
  }
  const double beyond = all_pairs_remainder(s, 4001);
  CHECK(std::abs(brute + beyond - all_pairs_remainder(s, 50)) < 1e-15);
}

TEST_CASE("coprime sums reproduce 2 and 1/3") {
  const series::SeriesResult one = tornheim_coprime(query(1, Mode::zeta));
  CHECK(std::abs(one.value - 2) < 1e-12);
  CHECK(one.tail_kind == series::TailKind::estimated);
  const series::SeriesResult two = tornheim_coprime(query(2, Mode::zeta));
  CHECK(std::abs(two.value - 1.0 / 3) < 1e-14);
}

TEST_CASE("gcd grouping checked by brute force at cutoff 2000") {
  double all = 0;
  double coprime = 0;
  for (int b = 2000; b >= 1; --b) {
    for (int d = 2000; d >= 1; --d) {
      const double t = std::pow(double(b) * d * (b + d), -2.0);
      all += t;
      if (std::gcd(b, d) == 1) coprime += t;
    }
  }
  CHECK(std::abs(all / zeta(6) - coprime) < 1e-10);
  // The coprime pairs beyond the cutoff weigh no more than all pairs there.
  const double missing = tornheim_coprime(query(2, Mode::zeta)).value - coprime;
  CHECK(missing > 0);
  CHECK(missing <= all_pairs_remainder(2, 2001) + 1e-15);
}

TEST_CASE("direct and zeta modes agree within the direct tail") {
  for (double s : {1.0, 1.5, 2.0}) {
    const auto direct = tornheim_coprime(query(s, Mode::direct));
    const auto fast = tornheim_coprime(query(s, Mode::zeta));
    CHECK(direct.tail_magnitude > 0);
    CHECK(std::abs(direct.value - fast.value) <= direct.tail_magnitude);
  }
}

TEST_CASE("query validation") {
  CHECK_THROWS_AS(tornheim_coprime(query(2.0 / 3, Mode::zeta)), DomainError);
  CHECK_THROWS_AS(tornheim_coprime(query(0.5, Mode::direct)), DomainError);
  CHECK_THROWS_AS(tornheim_coprime(query(2, Mode::direct, 1)), InvalidInput);
  CHECK_THROWS_AS(all_pairs_sum(0.6), DomainError);
}

TEST_CASE("coprime pairs from the tree: small cutoffs") {
  using P = std::pair<std::uint64_t, std::uint64_t>;
  auto as_set = [](const std::vector<P>& v) { return std::set<P>(v.begin(), v.end()); };
  CHECK(as_set(coprime_pairs(2)) == std::set<P>{{1, 1}, {1, 2}, {2, 1}});
  CHECK(as_set(coprime_pairs(3)) ==
        std::set<P>{{1, 1}, {1, 2}, {2, 1}, {1, 3}, {3, 1}, {2, 3}, {3, 2}});
}

TEST_CASE("coprime pairs from the tree equal the gcd filter, cutoff 300") {
  using P = std::pair<std::uint64_t, std::uint64_t>;
  const auto pairs = coprime_pairs(300);
  const std::set<P> from_tree(pairs.begin(), pairs.end());
  CHECK(from_tree.size() == pairs.size());
  std::set<P> from_gcd;
  for (std::uint64_t b = 1; b <= 300; ++b) {
    for (std::uint64_t d = 1; d <= 300; ++d) {
      if (std::gcd(b, d) == 1) from_gcd.insert({b, d});
    }
  }
  CHECK(from_tree == from_gcd);
}

TEST_CASE("coprime pair count at cutoff 1000 from totients") {
  const auto phi = totients(1000);
  std::uint64_t expected = 0;
  for (std::uint64_t n = 1; n <= 1000; ++n) expected += phi[n];
  expected = 2 * expected - 1;
  CHECK(coprime_pairs(1000).size() == expected);
}

TEST_CASE("parabola terms map onto coprime pairs through row sums") {
  // 4 * term(p) = 1 / (B D (B + D)) with (B, D) = (a + b, c + d), a coprime
  // pair hit once per node; the tree sum at s = 1 is therefore C(1) / 4.
  const auto parabola = support::builtin("parabola");
  std::vector<std::pair<lattice::UnimodularPair, int>> q{{lattice::root(), 0}};
  for (std::size_t i = 0; i < q.size(); ++i) {
    const auto& p = q[i].first;
    const double bb = double(p.a() + p.b());
    const double dd = double(p.c() + p.d());
    CHECK(4 * series::term(parabola, p) ==
          doctest::Approx(1 / (bb * dd * (bb + dd))).epsilon(1e-15));
    if (q[i].second == 10) continue;
    const auto ch = lattice::children(p);
    q.push_back({ch.left, q[i].second + 1});
    q.push_back({ch.right, q[i].second + 1});
  }
  series::SumControls c;
  c.s = 1;
  c.prune_epsilon = 1e-9;
  const auto r = series::sum_power(parabola, c);
  const double quarter = tornheim_coprime(query(1, Mode::zeta)).value / 4;
  CHECK(std::abs(quarter - 0.5) < 1e-12);
  CHECK(r.value <= quarter);
  CHECK(std::abs(r.value + r.tail_magnitude - quarter) < 1e-9);
}
