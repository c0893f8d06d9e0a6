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

#include "sl2sum/quadrature.hpp"

#include <array>
#include <cmath>
#include <algorithm>
#include <vector>

#include "sl2sum/errors.hpp"

namespace sl2sum::quadrature {

namespace {

// Kronrod abscissae on [0, 1]; odd indices are the Gauss nodes.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment rule(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kNodes[j];
    const double sum = f(center - dx) + f(center + dx);
    kronrod += kKronrodWeights[j] * sum;
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * sum;
  }
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, const QuadratureSpec& spec) {
  if (!(spec.abs_tol > 0)) {
    throw InvalidInput("quadrature tolerance must be positive");
  }
  if (a == b) return {};
  std::vector<Segment> work;
  Segment whole = rule(f, a, b);
  work.push_back(whole);
  double value = whole.value;
  double error = whole.error;
  std::size_t splits = 0;
  while (error > spec.abs_tol) {
    if (splits >= spec.max_subdivisions) {
      throw ToleranceNotMet("quadrature did not reach the requested tolerance",
                            value, error);
    }
    std::pop_heap(work.begin(), work.end());
    Segment worst = work.back();
    work.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > std::min(worst.a, worst.b) && mid < std::max(worst.a, worst.b))) {
      throw ToleranceNotMet("quadrature interval exhausted floating resolution",
                            value, error);
    }
    Segment left = rule(f, worst.a, mid);
    Segment right = rule(f, mid, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    work.push_back(left);
    std::push_heap(work.begin(), work.end());
    work.push_back(right);
    std::push_heap(work.begin(), work.end());
    ++splits;
    // The running sums drift; refresh them from the heap now and then.
    if (splits % 256 == 0 || error <= spec.abs_tol) {
      double v = 0;
      double e = 0;
      for (const Segment& s : work) {
        v += s.value;
        e += s.error;
      }
      value = v;
      error = e;
    }
  }
  return {value, error, splits};
}

}  // namespace sl2sum::quadrature
