// Copyright 2026 The Authors.
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

#ifndef SPECGEOM_QUADRATURE_HPP_
#define SPECGEOM_QUADRATURE_HPP_

#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "specgeom/error.hpp"

namespace specgeom {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int intervals = 0;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK constants).
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights attached to the odd Kronrod nodes 1, 3, 5 and the centre.
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

template <class F>
Segment gk15(F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  for (int j = 0; j < 7; ++j) {
    const double x = h * kKronrodNodes[j];
    const double sum = f(c - x) + f(c + x);
    kronrod += kKronrodWeights[j] * sum;
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * sum;
  }
  return {a, b, kronrod * h, std::abs((kronrod - gauss) * h)};
}

}  // namespace detail

// Globally adaptive Gauss-Kronrod (7/15) integration of a smooth integrand.
// Bisects the interval with the largest error estimate until the summed
// estimate drops below max(abs_tol, rel_tol * |I|).
template <class F>
QuadratureResult integrate(F&& f, double a, double b, double rel_tol = 1e-10,
                           double abs_tol = 0.0, int max_intervals = 4000) {
  if (a == b) return {};
  if (!(std::isfinite(a) && std::isfinite(b))) {
    throw DomainError("integrate: infinite limits are not supported");
  }
  std::priority_queue<detail::Segment> heap;
  auto first = detail::gk15(f, a, b);
  double total = first.value;
  double err = first.error;
  heap.push(first);
  int count = 1;
  const double floor = 50.0 * std::numeric_limits<double>::epsilon();
  while (err > std::max({abs_tol, rel_tol * std::abs(total), floor * std::abs(total)})) {
    if (count >= max_intervals) {
      throw ConvergenceError("integrate: interval budget exhausted");
    }
    auto worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    auto left = detail::gk15(f, worst.a, mid);
    auto right = detail::gk15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++count;
    if (err <= 0.0) break;
  }
  // Re-sum to shed the drift of the incremental updates.
  total = 0.0;
  err = 0.0;
  while (!heap.empty()) {
    total += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  return {total, err, count};
}

}  // namespace specgeom

#endif  // SPECGEOM_QUADRATURE_HPP_
