/*
 *   Copyright 2026 The ergoq Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/**
 * @file
 *
 * Exact discrepancy of finite point sets in one and two dimensions.
 *
 * 1-D uses the closed forms over the sorted sample x_(1) <= ... <= x_(n):
 *
 *   star:    D*_n = max_i max(i/n - x_(i), x_(i) - (i-1)/n)
 *   extreme: D_n  = 1/n + max_i (i/n - x_(i)) - min_i (i/n - x_(i))
 *
 * 2-D star discrepancy is a brute force over every anchored box whose upper
 * corner sits on the grid of point coordinates (plus 1), counting both the
 * open and the closed box. O(n^2) time after sorting.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ergoq/error.hpp"
#include "ergoq/qrseq.hpp"

namespace ergoq {

enum class DiscrepancyVariant { Star, Extreme };

namespace detail {

inline void check_unit_interval(std::span<const double> xs) {
  if (xs.empty()) throw InvalidArgument("discrepancy: empty point set");
  for (double x : xs) {
    if (!(x >= 0.0 && x < 1.0)) {
      throw InvalidArgument("discrepancy: point outside [0,1)");
    }
  }
}

}  // namespace detail

inline double discrepancy_1d(std::span<const double> points,
                             DiscrepancyVariant variant) {
  detail::check_unit_interval(points);
  std::vector<double> xs(points.begin(), points.end());
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double star = 0.0;
  double gap_max = -1.0;
  double gap_min = 2.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double lo = static_cast<double>(i) / n;
    const double hi = static_cast<double>(i + 1) / n;
    star = std::max({star, hi - xs[i], xs[i] - lo});
    gap_max = std::max(gap_max, hi - xs[i]);
    gap_min = std::min(gap_min, hi - xs[i]);
  }
  if (variant == DiscrepancyVariant::Star) return star;
  return std::min(1.0, 1.0 / n + gap_max - gap_min);
}

/// sup over t of |#{x_i < t}/n - t|.
inline double star_discrepancy_1d(std::span<const double> points) {
  return discrepancy_1d(points, DiscrepancyVariant::Star);
}

/// sup over intervals [a,b) of |#{a <= x_i < b}/n - (b - a)|.
inline double extreme_discrepancy_1d(std::span<const double> points) {
  return discrepancy_1d(points, DiscrepancyVariant::Extreme);
}

/// Star discrepancy of a 2-D point set.
inline double star_discrepancy_2d(std::span<const Point> points) {
  if (points.empty()) throw InvalidArgument("discrepancy: empty point set");
  const std::size_t n = points.size();
  std::vector<double> xs;
  std::vector<double> ys;
  xs.reserve(n);
  ys.reserve(n);
  for (const auto& p : points) {
    if (p.dim() != 2) throw InvalidArgument("discrepancy: expected 2-D points");
    const double both[2] = {p[0], p[1]};
    detail::check_unit_interval(both);
    xs.push_back(p[0]);
    ys.push_back(p[1]);
  }

  // Distinct y thresholds, with 1.0 closing the grid.
  std::vector<double> ty(ys);
  ty.push_back(1.0);
  std::sort(ty.begin(), ty.end());
  ty.erase(std::unique(ty.begin(), ty.end()), ty.end());
  std::vector<std::size_t> yrank(n);
  for (std::size_t i = 0; i < n; ++i) {
    yrank[i] = static_cast<std::size_t>(
        std::lower_bound(ty.begin(), ty.end(), ys[i]) - ty.begin());
  }

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });

  std::vector<double> tx(xs);
  tx.push_back(1.0);
  std::sort(tx.begin(), tx.end());
  tx.erase(std::unique(tx.begin(), tx.end()), tx.end());

  // strict[r]: points with x < current threshold and y-rank r.
  // closed[r]: points with x <= current threshold and y-rank r.
  std::vector<std::size_t> strict(ty.size(), 0);
  std::vector<std::size_t> closed(ty.size(), 0);
  const double inv_n = 1.0 / static_cast<double>(n);
  double worst = 0.0;
  std::size_t next_strict = 0;
  std::size_t next_closed = 0;
  for (double cx : tx) {
    while (next_strict < n && xs[order[next_strict]] < cx) {
      ++strict[yrank[order[next_strict++]]];
    }
    while (next_closed < n && xs[order[next_closed]] <= cx) {
      ++closed[yrank[order[next_closed++]]];
    }
    std::size_t below_open = 0;
    std::size_t below_closed = 0;
    for (std::size_t r = 0; r < ty.size(); ++r) {
      const double vol = cx * ty[r];
      // [0,cx) x [0,ty[r]): strictly lower ranks of the strict set.
      worst = std::max(worst, vol - static_cast<double>(below_open) * inv_n);
      below_open += strict[r];
      below_closed += closed[r];
      // [0,cx] x [0,ty[r]]
      worst = std::max(worst, static_cast<double>(below_closed) * inv_n - vol);
    }
  }
  return std::min(worst, 1.0);
}

/// The finite midpoint set (1/2n, 3/2n, ..., (2n-1)/2n).
inline std::vector<double> midpoint_set(std::size_t n) {
  if (n == 0) throw InvalidArgument("midpoint_set: n must be >= 1");
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = static_cast<double>(2 * i + 1) / static_cast<double>(2 * n);
  }
  return out;
}

struct TrendRow {
  std::size_t n = 0;
  double star = 0.0;
  /// n * D*_n / (1 + log n): stays bounded when D*_n = O((1 + log n) / n).
  double normalized = 0.0;
};

inline double normalized_discrepancy(std::size_t n, double star) {
  const double nd = static_cast<double>(n);
  return nd * star / (1.0 + std::log(nd));
}

/// Star discrepancy of the first n stream points (from the spec's burn-in
/// offset) for each requested n. Dimension 1 is exact; dimension 2 uses the
/// grid brute force.
inline std::vector<TrendRow> discrepancy_trend(const GeneratorSpec& spec,
                                               std::span<const std::size_t> ns) {
  if (spec.dim > 2) {
    throw InvalidArgument("discrepancy: only dimensions 1 and 2 are supported");
  }
  const Generator gen(spec);
  const std::uint64_t skip = spec.resolved_skip();
  std::size_t max_n = 0;
  for (auto n : ns) {
    if (n == 0) throw InvalidArgument("discrepancy: sample size must be >= 1");
    max_n = std::max(max_n, n);
  }
  std::vector<Point> pts;
  pts.reserve(max_n);
  for (std::size_t i = 0; i < max_n; ++i) pts.push_back(gen.point(skip + i));

  std::vector<TrendRow> rows;
  rows.reserve(ns.size());
  for (auto n : ns) {
    const std::span<const Point> head(pts.data(), n);
    double d = 0.0;
    if (spec.dim == 1) {
      std::vector<double> xs(n);
      for (std::size_t i = 0; i < n; ++i) xs[i] = head[i][0];
      d = star_discrepancy_1d(xs);
    } else {
      d = star_discrepancy_2d(head);
    }
    rows.push_back({n, d, normalized_discrepancy(n, d)});
  }
  return rows;
}

}  // namespace ergoq
