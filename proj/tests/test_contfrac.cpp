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
#include <cstdlib>
#include <numbers>
#include <vector>

#include "sl2sum/contfrac.hpp"
#include "sl2sum/errors.hpp"

using namespace sl2sum;
using namespace sl2sum::contfrac;

namespace {

const double kPhi = std::numbers::phi;
const double kSilver = 1 + std::numbers::sqrt2;
const double kPi = std::numbers::pi;

void check_structure(const CFExpansion& e) {
  REQUIRE(e.convergents.size() == e.quotients.size() + 1);
  CHECK(e.convergents[0].p == 1);
  CHECK(e.convergents[0].q == 0);
  BigInt p_prev = 0, q_prev = 1;
  for (std::size_t k = 1; k < e.convergents.size(); ++k) {
    const auto& c = e.convergents[k];
    const auto& b = e.convergents[k - 1];
    CHECK(c.p == e.quotients[k - 1] * b.p + p_prev);
    CHECK(c.q == e.quotients[k - 1] * b.q + q_prev);
    const BigInt det = c.p * b.q - b.p * c.q;
    CHECK((det == 1 || det == -1));
    p_prev = b.p;
    q_prev = b.q;
    CHECK(evaluate(std::vector<BigInt>(e.quotients.begin(),
                                       e.quotients.begin() + long(k))) ==
          BigRational(c.p, c.q));
  }
}

}  // namespace

TEST_CASE("golden ratio: unit quotients and Fibonacci convergents") {
  const CFExpansion e = expand(Alpha::named("phi"), 10);
  REQUIRE(e.quotients.size() == 10);
  for (const BigInt& r : e.quotients) CHECK(r == 1);
  // F_{k+1} / F_k by the Fibonacci recurrence.
  BigInt f0 = 0, f1 = 1;
  for (std::size_t k = 1; k < e.convergents.size(); ++k) {
    const BigInt f2 = f0 + f1;
    CHECK(e.convergents[k].p == f2);
    CHECK(e.convergents[k].q == f1);
    f0 = f1;
    f1 = f2;
  }
  check_structure(e);
}

TEST_CASE("known expansions") {
  const CFExpansion silver = expand(Alpha::surd(1, 2, 1), 5);
  for (const BigInt& r : silver.quotients) CHECK(r == 2);
  const CFExpansion half = expand(Alpha::decimal("2.5"), 10);
  REQUIRE(half.quotients.size() == 2);
  CHECK(half.quotients[0] == 2);
  CHECK(half.quotients[1] == 2);
  CHECK(half.terminated);
  const CFExpansion pi = expand(Alpha::named("pi"), 5);
  const std::vector<BigInt> head = {3, 7, 15, 1, 292};
  CHECK(pi.quotients == head);
  const CFExpansion e = expand(Alpha::named("e"), 8);
  const std::vector<BigInt> e_head = {2, 1, 2, 1, 1, 4, 1, 1};
  CHECK(e.quotients == e_head);
  check_structure(expand(Alpha::named("e"), 30));
  check_structure(expand(Alpha::named("pi"), 30));
}

TEST_CASE("surds that need scaling expand like their floating value") {
  // (3 + sqrt 7) / 2: 2 does not divide 7 - 9, so the triple is rescaled.
  const CFExpansion e = expand(Alpha::surd(3, 7, 2), 12);
  long double x = (3 + std::sqrt(7.0L)) / 2;
  for (std::size_t k = 0; k < 8; ++k) {
    const long double r = std::floor(x);
    CHECK(e.quotients[k] == BigInt(static_cast<long long>(r)));
    x = 1 / (x - r);
  }
  check_structure(e);
  // Negative Q.
  const CFExpansion n = expand(Alpha::surd(-5, 3, -2), 10);
  CHECK(static_cast<double>(n.alpha.value()) == doctest::Approx((5 - std::sqrt(3.0)) / 2));
  long double y = (5 - std::sqrt(3.0L)) / 2;
  for (std::size_t k = 0; k < 6; ++k) {
    const long double r = std::floor(y);
    CHECK(n.quotients[k] == BigInt(static_cast<long long>(r)));
    y = 1 / (y - r);
  }
}

TEST_CASE("deviations decrease strictly") {
  for (const Alpha& a : {Alpha::named("phi"), Alpha::named("pi"), Alpha::named("e"),
                         Alpha::surd(1, 2, 1)}) {
    const CFExpansion e = expand(a, 30);
    const auto dev = deviations(e);
    for (std::size_t k = 1; k < dev.size(); ++k) CHECK(dev[k] < dev[k - 1]);
  }
}

TEST_CASE("golden ratio series") {
  const CFExpansion e40 = expand(Alpha::named("phi"), 40);
  CHECK(std::abs(series_sq(e40) - kPhi) < 1e-14);
  // The first 40 absolute terms are phi^-k, k < 40: their sum falls short of
  // phi + 1 by phi^-38.
  CHECK(std::abs(series_abs(e40) - (kPhi + 1) * (1 - std::pow(kPhi, -40))) < 1e-14);
  CHECK(std::abs(series_abs(e40) - (kPhi + 1)) ==
        doctest::Approx(std::pow(kPhi, -38)).epsilon(1e-6));
  const CFExpansion e60 = expand(Alpha::named("phi"), 60);
  CHECK(std::abs(series_abs(e60) - (kPhi + 1)) < 1e-12);
}

TEST_CASE("silver ratio and pi series") {
  const CFExpansion s = expand(Alpha::surd(1, 2, 1), 30);
  CHECK(std::abs(series_abs(s) - (kSilver + 1)) < 1e-10);
  CHECK(std::abs(series_sq(s) - kSilver) < 1e-12);
  const CFExpansion p = expand(Alpha::named("pi", 50), 20);
  CHECK(std::abs(series_sq(p) - kPi) < 1e-8);
  CHECK(std::abs(series_abs(p) - (kPi + 1)) < 1e-6);
}

TEST_CASE("first term is the integer part") {
  const CFExpansion e = expand(Alpha::named("pi"), 1);
  CHECK(series_abs(e) == 3);
}

TEST_CASE("telescoped tails close the identities") {
  for (const Alpha& a : {Alpha::named("phi"), Alpha::surd(1, 2, 1), Alpha::named("e")}) {
    for (std::size_t n : {3u, 10u, 25u}) {
      const CFExpansion e = expand(a, n);
      const double alpha = static_cast<double>(a.value());
      CHECK(std::abs(series_abs(e) + series_abs_tail(e) - (alpha + 1)) < 1e-14);
      CHECK(std::abs(series_sq(e) + series_sq_tail(e) - alpha) < 1e-14);
    }
  }
}

TEST_CASE("partial sums rise monotonically and stay below their limits") {
  for (const Alpha& a : {Alpha::named("pi"), Alpha::named("e"), Alpha::named("phi")}) {
    const CFExpansion e = expand(a, 30);
    const auto dev = deviations(e);
    const long double alpha = a.value();
    long double abs_sum = 0, sq_sum = 0;
    for (std::size_t k = 0; k < dev.size(); ++k) {
      const long double r = e.quotients[k].convert_to<long double>();
      const long double na = abs_sum + dev[k] * r;
      const long double ns = sq_sum + dev[k] * dev[k] * r;
      CHECK(na >= abs_sum);
      CHECK(ns >= sq_sum);
      abs_sum = na;
      sq_sum = ns;
      CHECK(abs_sum <= alpha + 1 + 1e-15L);
      CHECK(sq_sum <= alpha + 1e-15L);
    }
  }
}

TEST_CASE("precision guard stops inexact inputs") {
  const CFExpansion e = expand(Alpha::named("pi", 50), 200);
  CHECK(e.precision_exhausted);
  CHECK(e.quotients.size() < 60);
  const BigInt& q = e.convergents.back().q;
  CHECK(q * q <= BigInt("100000000000000000000000000000000000000000000"));
  const CFExpansion exact = expand(Alpha::named("phi"), 200);
  CHECK_FALSE(exact.precision_exhausted);
  CHECK(exact.quotients.size() == 200);
}

TEST_CASE("working precision from the environment") {
  ::setenv("SL2SUM_PRECISION", "30", 1);
  CHECK(working_digits() == 30);
  CHECK(Alpha::named("pi").fraction_digits() == 29);
  ::setenv("SL2SUM_PRECISION", "junk", 1);
  CHECK_THROWS_AS(working_digits(), InvalidInput);
  ::unsetenv("SL2SUM_PRECISION");
  CHECK(working_digits() == 50);
}

TEST_CASE("parsing and errors") {
  CHECK(Alpha::parse("phi").is_surd());
  CHECK(Alpha::parse("(1, 2, 1)").is_surd());
  CHECK(Alpha::parse("3.25").exact());
  CHECK_FALSE(Alpha::parse("3.14159", 3).exact());
  CHECK(Alpha::surd(2, 9, 1).exact());
  CHECK_FALSE(Alpha::surd(2, 9, 1).is_surd());
  CHECK_THROWS_AS(Alpha::parse("1.2.3"), InvalidInput);
  CHECK_THROWS_AS(Alpha::parse("-2"), InvalidInput);
  CHECK_THROWS_AS(Alpha::parse("1,2"), InvalidInput);
  CHECK_THROWS_AS(Alpha::named("tau"), InvalidInput);
  CHECK_THROWS_AS(Alpha::surd(1, 5, 0), InvalidInput);
  CHECK_THROWS_AS(expand(Alpha::decimal("0.5"), 3), DomainError);
  CHECK_THROWS_AS(expand(Alpha::decimal("1"), 3), DomainError);
  CHECK_THROWS_AS(expand(Alpha::named("phi"), 0), InvalidInput);
  const CFExpansion one = expand(Alpha::decimal("2"), 3);
  CHECK(one.terminated);
  CHECK_THROWS_AS(series_abs(CFExpansion{Alpha::named("phi"), {}, {{1, 0}}, false, false}),
                  InvalidInput);
}
