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

#include "sl2sum/errors.hpp"
#include "sl2sum/quadrature.hpp"

using namespace sl2sum;
using namespace sl2sum::quadrature;

TEST_CASE("polynomials integrate exactly") {
  const auto r = integrate([](double x) { return x * x; }, 0, 1);
  CHECK(std::abs(r.value - 1.0 / 3) < 1e-15);
  CHECK(r.error_estimate <= 1e-10);
}

TEST_CASE("reversed limits flip the sign") {
  const auto r = integrate([](double x) { return std::exp(x); }, 1, 0);
  CHECK(std::abs(r.value + (std::numbers::e - 1)) < 1e-13);
}

TEST_CASE("endpoint singularities converge by subdivision") {
  const auto r = integrate([](double x) { return 1 / std::sqrt(x); }, 0, 1,
                           {1e-10, 1 << 16});
  CHECK(std::abs(r.value - 2) < 1e-9);
  CHECK(r.subdivisions > 1);
}

TEST_CASE("oscillatory integrand") {
  const auto r = integrate([](double x) { return std::sin(50 * x); }, 0,
                           std::numbers::pi);
  CHECK(std::abs(r.value) < 1e-10);
}

TEST_CASE("subdivision limit reports the best estimate") {
  try {
    integrate([](double x) { return 1 / std::sqrt(x); }, 0, 1, {1e-14, 3});
    FAIL("expected ToleranceNotMet");
  } catch (const ToleranceNotMet& e) {
    CHECK(std::abs(e.best_estimate() - 2) < 0.1);
    CHECK(e.error_estimate() > 1e-14);
  }
}

TEST_CASE("tolerance must be positive") {
  CHECK_THROWS_AS(integrate([](double) { return 1.0; }, 0, 1, {0, 10}),
                  InvalidInput);
}
