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

// Test-only reference implementations. Each one takes the slow, obvious
// route and shares no code path with the library beyond the value types.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "ergoq/fuzzy_matrix.hpp"

namespace ergoq::oracle {

using Grid = std::vector<std::vector<double>>;

inline Grid to_grid(const FuzzyMatrix& m) {
  Grid g(m.size(), std::vector<double>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) g[i][j] = m(i, j);
  return g;
}

inline FuzzyMatrix from_grid(const Grid& g) {
  std::vector<double> flat;
  for (const auto& r : g) flat.insert(flat.end(), r.begin(), r.end());
  return FuzzyMatrix(g.size(), flat);
}

/// Max-min product straight from the definition.
inline Grid compose(const Grid& a, const Grid& b) {
  const std::size_t n = a.size();
  Grid c(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double best = 0.0;
      for (std::size_t k = 0; k < n; ++k) best = std::max(best, std::min(a[i][k], b[k][j]));
      c[i][j] = best;
    }
  return c;
}

struct PowerOrbit {
  std::size_t tau = 0;
  std::size_t period = 0;
  Grid at_tau;
};

/// Stores every power and scans all earlier ones for the first repeat.
inline std::optional<PowerOrbit> power_orbit(const Grid& p, std::size_t max_power) {
  std::vector<Grid> powers{p};
  while (powers.size() < max_power) {
    Grid next = compose(p, powers.back());
    for (std::size_t s = 0; s < powers.size(); ++s) {
      if (powers[s] == next) {
        return PowerOrbit{s + 1, powers.size() + 1 - (s + 1), powers[s]};
      }
    }
    powers.push_back(std::move(next));
  }
  return std::nullopt;
}

/// Exact binomial coefficient (small arguments only).
inline std::uint64_t choose(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Faure coordinate `dim_index` (0-based) of point i, via the closed form of
/// the Pascal-matrix power: P^m(j, l) = C(l, j) m^(l-j) mod p.
inline double faure_coordinate(std::uint64_t i, std::size_t dim_index, std::uint32_t p) {
  std::vector<std::uint64_t> a;
  do {
    a.push_back(i % p);
    i /= p;
  } while (i != 0);
  const std::uint64_t m = dim_index;
  double v = 0.0;
  double w = 1.0 / p;
  for (std::size_t j = 0; j < a.size(); ++j) {
    std::uint64_t acc = 0;
    for (std::size_t l = j; l < a.size(); ++l) {
      std::uint64_t mp = 1;
      for (std::size_t e = 0; e < l - j; ++e) mp = (mp * m) % p;
      acc = (acc + (choose(l, j) % p) * mp % p * a[l]) % p;
    }
    v += static_cast<double>(acc) * w;
    w /= p;
  }
  return v;
}

/// sup_t |#{x < t}/n - t| by scanning t over every point, 0 and 1, with both
/// one-sided limits (open and closed count).
inline double star_scan_1d(const std::vector<double>& xs) {
  std::vector<double> ts(xs);
  ts.push_back(0.0);
  ts.push_back(1.0);
  const double n = static_cast<double>(xs.size());
  double worst = 0.0;
  for (double t : ts) {
    double lt = 0, le = 0;
    for (double x : xs) {
      lt += x < t;
      le += x <= t;
    }
    worst = std::max({worst, std::abs(lt / n - t), std::abs(le / n - t)});
  }
  return worst;
}

/// sup over [a,b) of |#{a <= x < b}/n - (b - a)| by scanning all endpoint
/// pairs with all open/closed variants.
inline double extreme_scan_1d(const std::vector<double>& xs) {
  std::vector<double> ts(xs);
  ts.push_back(0.0);
  ts.push_back(1.0);
  const double n = static_cast<double>(xs.size());
  double worst = 0.0;
  for (double a : ts)
    for (double b : ts) {
      if (b < a) continue;
      double oo = 0, oc = 0, co = 0, cc = 0;
      for (double x : xs) {
        oo += a < x && x < b;
        oc += a < x && x <= b;
        co += a <= x && x < b;
        cc += a <= x && x <= b;
      }
      const double len = b - a;
      worst = std::max({worst, std::abs(oo / n - len), std::abs(oc / n - len),
                        std::abs(co / n - len), std::abs(cc / n - len)});
    }
  return worst;
}

/// 2-D star discrepancy, O(n^3): every grid corner, open and closed boxes.
inline double star_scan_2d(const std::vector<std::pair<double, double>>& pts) {
  std::vector<double> tx{1.0}, ty{1.0};
  for (auto [x, y] : pts) {
    tx.push_back(x);
    ty.push_back(y);
  }
  const double n = static_cast<double>(pts.size());
  double worst = 0.0;
  for (double cx : tx)
    for (double cy : ty) {
      double open = 0, closed = 0;
      for (auto [x, y] : pts) {
        open += x < cx && y < cy;
        closed += x <= cx && y <= cy;
      }
      worst = std::max({worst, cx * cy - open / n, closed / n - cx * cy});
    }
  return worst;
}

// ---------------------------------------------------------------------------
// random inputs

inline FuzzyMatrix random_matrix(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(n * n);
  for (auto& x : v) x = u(rng);
  return FuzzyMatrix(n, v);
}

/// Entries from {0, 1/(levels-1), ..., 1}.
inline FuzzyMatrix random_quantized(std::mt19937_64& rng, std::size_t n, int levels) {
  std::uniform_int_distribution<int> q(0, levels - 1);
  std::vector<double> v(n * n);
  for (auto& x : v) x = static_cast<double>(q(rng)) / (levels - 1);
  return FuzzyMatrix(n, v);
}

/// Random state with at least one entry equal to 1.
inline FuzzyState random_normalized_state(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  v[std::uniform_int_distribution<std::size_t>(0, n - 1)(rng)] = 1.0;
  return FuzzyState(v);
}

inline std::set<double> entry_set(const FuzzyMatrix& m) {
  return {m.values().begin(), m.values().end()};
}

}  // namespace ergoq::oracle
