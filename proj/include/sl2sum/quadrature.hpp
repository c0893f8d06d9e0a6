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

// Globally adaptive 7/15-point Gauss-Kronrod quadrature.

#pragma once

#include <cstddef>
#include <functional>

namespace sl2sum::quadrature {

struct QuadratureSpec {
  double abs_tol = 1e-10;
  std::size_t max_subdivisions = std::size_t{1} << 20;
};

struct QuadratureResult {
  double value = 0;
  double error_estimate = 0;
  std::size_t subdivisions = 0;
};

// Integrates f over the finite interval [a, b]. Splits the interval with the
// largest error estimate until the summed estimate drops below abs_tol.
// Throws ToleranceNotMet (carrying the best estimate) when the subdivision
// limit is reached first, InvalidInput for a non-positive tolerance.
QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, const QuadratureSpec& spec = {});

}  // namespace sl2sum::quadrature
