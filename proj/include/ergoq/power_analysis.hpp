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
 * Max-min power iteration with exact cycle detection, and the
 * periodic / weakly ergodic / strongly ergodic classification.
 *
 * The powers P, P^2, P^3, ... only ever contain entries of P, so they live in
 * a finite set and the orbit is eventually periodic. analyze_powers returns
 * the smallest tau >= 1 and period c >= 1 with P^(tau+c) == P^tau.
 */

#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ergoq/error.hpp"
#include "ergoq/fuzzy_matrix.hpp"

namespace ergoq {

enum class Ergodicity { StrongErgodic, WeakErgodic, Periodic };

inline std::string_view to_string(Ergodicity e) {
  switch (e) {
    case Ergodicity::StrongErgodic: return "strong-ergodic";
    case Ergodicity::WeakErgodic: return "weak-ergodic";
    case Ergodicity::Periodic: return "periodic";
  }
  return "?";
}

struct PowerAnalysis {
  std::size_t tau = 1;
  std::size_t period = 1;
  /// P^tau; present iff period == 1.
  std::optional<FuzzyMatrix> stationary;
  Ergodicity classification = Ergodicity::Periodic;
  /// Powers examined (hashed path) or compositions performed (Brent path).
  std::size_t steps_examined = 0;
};

struct PowerOptions {
  /// Composition budget. Unset means default_max_steps(n).
  std::optional<std::size_t> max_steps;
  /// Powers kept in the seen-map before falling back to Brent's
  /// tortoise/hare scheme.
  std::size_t memory_cap = 10000;
};

inline std::size_t default_max_steps(std::size_t n) {
  return std::max<std::size_t>(1000, 4 * n);
}

/// Strong iff the stationary matrix has all rows identical; every other
/// stationary matrix is weak.
inline Ergodicity classify_ergodicity(const FuzzyMatrix& stationary) {
  return rows_identical(stationary) ? Ergodicity::StrongErgodic
                                    : Ergodicity::WeakErgodic;
}

namespace detail {

inline PowerAnalysis finish(std::size_t tau, std::size_t period,
                            const FuzzyMatrix& at_tau, std::size_t steps) {
  PowerAnalysis r;
  r.tau = tau;
  r.period = period;
  r.steps_examined = steps;
  if (period == 1) {
    r.stationary = at_tau;
    r.classification = classify_ergodicity(at_tau);
  } else {
    r.classification = Ergodicity::Periodic;
  }
  return r;
}

// Brent's cycle finding on x_1 = P, x_{t+1} = P o x_t. Constant memory.
// Both phases together need at most about 4 * (tau + period) compositions,
// so the budget here is four times the step cap.
inline PowerAnalysis analyze_powers_brent(const FuzzyMatrix& p,
                                          std::size_t max_steps) {
  const std::size_t limit = 4 * max_steps;
  std::size_t steps = 0;
  auto advance = [&](const FuzzyMatrix& x) {
    if (++steps > limit) throw CycleNotFound(max_steps);
    return max_min_compose(p, x);
  };

  std::size_t power = 1;
  std::size_t lam = 1;
  FuzzyMatrix tortoise = p;
  FuzzyMatrix hare = advance(p);
  while (!(tortoise == hare)) {
    if (power == lam) {
      tortoise = hare;
      power *= 2;
      lam = 0;
    }
    hare = advance(hare);
    ++lam;
  }

  tortoise = p;
  hare = p;
  for (std::size_t i = 0; i < lam; ++i) hare = advance(hare);
  std::size_t mu = 0;
  while (!(tortoise == hare)) {
    tortoise = advance(tortoise);
    hare = advance(hare);
    ++mu;
  }
  return finish(mu + 1, lam, tortoise, steps);
}

}  // namespace detail

/// Powers P^1, P^2, ... are hashed by their exact entry bytes; a hash hit is
/// confirmed by full comparison. Throws CycleNotFound if no repeat shows up
/// within max_steps compositions, i.e. among P^1..P^(max_steps+1).
inline PowerAnalysis analyze_powers(const FuzzyMatrix& p,
                                    const PowerOptions& opts = {}) {
  if (p.size() == 0) throw InvalidArgument("analyze_powers: empty matrix");
  const std::size_t max_steps = opts.max_steps.value_or(default_max_steps(p.size()));
  if (max_steps == 0) throw InvalidArgument("analyze_powers: max_steps must be >= 1");

  std::unordered_multimap<std::size_t, std::size_t> seen;
  std::vector<FuzzyMatrix> powers;  // powers[t-1] == P^t
  FuzzyMatrix cur = p;
  for (std::size_t t = 1; t <= max_steps + 1; ++t) {
    const std::size_t h = hash_value(cur);
    const auto [lo, hi] = seen.equal_range(h);
    for (auto it = lo; it != hi; ++it) {
      const std::size_t s = it->second;
      if (powers[s - 1] == cur) return detail::finish(s, t - s, powers[s - 1], t);
    }
    if (powers.size() >= opts.memory_cap) {
      return detail::analyze_powers_brent(p, max_steps);
    }
    seen.emplace(h, t);
    powers.push_back(cur);
    if (t <= max_steps) cur = max_min_compose(p, cur);
  }
  throw CycleNotFound(max_steps);
}

inline PowerAnalysis analyze_powers(const FuzzyMatrix& p, std::size_t max_steps) {
  PowerOptions opts;
  opts.max_steps = max_steps;
  return analyze_powers(p, opts);
}

}  // namespace ergoq
