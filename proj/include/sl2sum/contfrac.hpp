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

// Continued fractions of alpha > 1 with exact integer convergents, and the
// two weighted series over them:
//   sum_k |p_k - alpha q_k| r_{k+1} = alpha + 1,
//   sum_k (p_k - alpha q_k)^2 r_{k+1} = alpha.
// Convergents are seeded (p_0, q_0) = (1, 0), (p_1, q_1) = (r_1, 1).

#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace sl2sum::contfrac {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// SL2SUM_PRECISION when set (an integer in [10, 10000]), otherwise 50.
// Throws InvalidInput for a malformed value.
int working_digits();

// A real number held exactly: either a rational N/M or a quadratic surd
// (P + sqrt(D)) / Q with D > 0 not a perfect square and Q | D - P^2.
class Alpha {
 public:
  // A decimal string cut to `digits` significant digits. exact() reports
  // whether nothing was cut. Throws InvalidInput on malformed text.
  static Alpha decimal(std::string_view text, int digits = working_digits());
  static Alpha rational(BigInt num, BigInt den);
  // (P + sqrt(D)) / Q. A square D yields the rational. Throws InvalidInput
  // for D < 0 or Q = 0.
  static Alpha surd(BigInt p, BigInt d, BigInt q);
  // phi, sqrt2 (exact surds), pi, e (decimal at `digits`).
  static Alpha named(std::string_view name, int digits = working_digits());
  // A name, a surd triple "P,D,Q", or a decimal string.
  static Alpha parse(std::string_view spec, int digits = working_digits());

  bool is_surd() const noexcept { return surd_; }
  bool exact() const noexcept { return exact_; }
  // Digits after the decimal point that the value is known to; 0 if exact.
  int fraction_digits() const noexcept { return fraction_digits_; }
  const std::string& label() const noexcept { return label_; }

  long double value() const;
  // p - alpha * q, exact until the final rounding.
  long double deviation(const BigInt& p, const BigInt& q) const;

 private:
  Alpha() = default;
  friend class Expander;

  bool surd_ = false;
  bool exact_ = true;
  int fraction_digits_ = 0;
  std::string label_;
  BigInt num_, den_;    // rational
  BigInt p_, d_, q_;    // surd
};

struct Convergent {
  BigInt p;
  BigInt q;
};

struct CFExpansion {
  Alpha alpha;
  std::vector<BigInt> quotients;        // r_1 .. r_n
  std::vector<Convergent> convergents;  // k = 0 .. n
  bool terminated = false;              // alpha is rational and fully expanded
  bool precision_exhausted = false;     // stopped at the precision guard
};

// First n quotients. Stops early for a rational alpha (terminated) or when
// the next denominator q satisfies q^2 > 10^(fraction_digits - 5) for an
// inexact alpha (precision_exhausted). Throws DomainError for alpha <= 1,
// InvalidInput for n = 0.
CFExpansion expand(const Alpha& alpha, std::size_t n);

// |p_k - alpha q_k| for k = 0 .. n-1.
std::vector<long double> deviations(const CFExpansion& e);

// Both throw InvalidInput for fewer than two convergents.
double series_abs(const CFExpansion& e);
double series_sq(const CFExpansion& e);

// What the infinite series add beyond the first n terms. From
// |dev_{k-1}| = r_{k+1} |dev_k| + |dev_{k+1}| both remainders telescope:
// abs: |dev_{n-1}| + |dev_n|, sq: |dev_{n-1} dev_n|. Zero once terminated.
double series_abs_tail(const CFExpansion& e);
double series_sq_tail(const CFExpansion& e);

// [r_1; r_2, ..., r_n] in exact rational arithmetic.
BigRational evaluate(const std::vector<BigInt>& quotients);

}  // namespace sl2sum::contfrac
