// Copyright 2026 The UQF Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <numeric>

namespace uqf::detail {

template <std::size_t N>
struct SimplexResult {
  std::array<double, N> x{};
  double value = 0.0;
  int evaluations = 0;
};

// Derivative-free simplex minimization (standard reflection 1, expansion 2,
// contraction 1/2, shrink 1/2). Stops at `target`, after `max_evals`
// evaluations, or when the simplex values collapse.
template <std::size_t N, class Objective>
SimplexResult<N> nelder_mead(Objective&& f, const std::array<double, N>& start, double step,
                             int max_evals, double target) {
  using Point = std::array<double, N>;
  std::array<Point, N + 1> pts;
  std::array<double, N + 1> vals;
  int evals = 0;
  auto eval = [&](const Point& p) {
    ++evals;
    return f(p);
  };

  pts[0] = start;
  vals[0] = eval(start);
  for (std::size_t i = 0; i < N; ++i) {
    pts[i + 1] = start;
    pts[i + 1][i] += step;
    vals[i + 1] = eval(pts[i + 1]);
  }

  std::array<std::size_t, N + 1> order;
  auto sort_simplex = [&] {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return vals[a] < vals[b] || (vals[a] == vals[b] && a < b);
    });
    std::array<Point, N + 1> p2;
    std::array<double, N + 1> v2;
    for (std::size_t i = 0; i <= N; ++i) {
      p2[i] = pts[order[i]];
      v2[i] = vals[order[i]];
    }
    pts = p2;
    vals = v2;
  };
  auto affine = [](const Point& a, const Point& b, double t) {
    Point r;
    for (std::size_t i = 0; i < N; ++i) r[i] = a[i] + t * (b[i] - a[i]);
    return r;
  };

  sort_simplex();
  while (evals < max_evals && vals[0] > target) {
    if (vals[N] - vals[0] <= 1e-300) break;
    Point centroid{};
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t k = 0; k < N; ++k) centroid[k] += pts[i][k] / static_cast<double>(N);

    const Point reflected = affine(centroid, pts[N], -1.0);
    const double fr = eval(reflected);
    if (fr < vals[0]) {
      const Point expanded = affine(centroid, pts[N], -2.0);
      const double fe = eval(expanded);
      if (fe < fr) {
        pts[N] = expanded;
        vals[N] = fe;
      } else {
        pts[N] = reflected;
        vals[N] = fr;
      }
    } else if (fr < vals[N - 1]) {
      pts[N] = reflected;
      vals[N] = fr;
    } else {
      const bool outside = fr < vals[N];
      const Point contracted = outside ? affine(centroid, reflected, 0.5)
                                       : affine(centroid, pts[N], 0.5);
      const double fc = eval(contracted);
      if (fc < std::min(fr, vals[N])) {
        pts[N] = contracted;
        vals[N] = fc;
      } else {
        for (std::size_t i = 1; i <= N; ++i) {
          pts[i] = affine(pts[0], pts[i], 0.5);
          vals[i] = eval(pts[i]);
        }
      }
    }
    sort_simplex();
  }
  return {pts[0], vals[0], evals};
}

}  // namespace uqf::detail
