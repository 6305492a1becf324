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
 * The counting experiment: fill fuzzy transition matrices from a
 * low-discrepancy stream, analyse their max-min powers, and count how many
 * chains end up strongly ergodic, weakly ergodic or periodic.
 *
 * Matrix filling (FillStrategy):
 *
 * | mode          | generator dim | entry (i,j) of trial t comes from          |
 * |---------------|---------------|--------------------------------------------|
 * | PerRowPoint   | n             | coord j of point skip + t*n + i            |
 * | FlattenStream | stream_dim    | stream position skip + t*n^2 + i*n + j     |
 *
 * A stream position s of a d-dimensional generator is coordinate s % d of
 * point s / d, so for FlattenStream the skip counts stream positions (equal to
 * points when stream_dim is 1).
 *
 * Trials are independent and indexed, so they run on a worker pool and are
 * merged in trial order; the report does not depend on the worker count.
 */

#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "ergoq/error.hpp"
#include "ergoq/fuzzy_matrix.hpp"
#include "ergoq/power_analysis.hpp"
#include "ergoq/qrseq.hpp"

namespace ergoq {

enum class FillMode { PerRowPoint, FlattenStream };

inline std::string_view to_string(FillMode m) {
  return m == FillMode::PerRowPoint ? "per-row" : "flatten";
}

inline FillMode parse_fill_mode(std::string_view s) {
  if (s == "per-row" || s == "per-row-point") return FillMode::PerRowPoint;
  if (s == "flatten" || s == "flatten-stream") return FillMode::FlattenStream;
  throw InvalidArgument("unknown fill mode '" + std::string(s) + "'");
}

struct FillStrategy {
  FillMode mode = FillMode::PerRowPoint;
  /// Generator dimension for FlattenStream; ignored for PerRowPoint.
  std::size_t stream_dim = 1;
};

/// Anything that yields indexed points of a fixed dimension.
template <typename S>
concept PointSource = requires(const S& s, std::uint64_t i, std::span<double> out) {
  { s.dimension() } -> std::convertible_to<std::size_t>;
  s.point_into(i, out);
};

/// Deterministic fill of one n x n matrix for trial `trial`.
template <PointSource Source>
FuzzyMatrix build_matrix(const Source& src, std::size_t n, std::size_t trial,
                         const FillStrategy& fill, std::uint64_t skip) {
  if (n == 0) throw InvalidArgument("build_matrix: n must be >= 1");
  const std::size_t d = src.dimension();
  std::vector<double> entries(n * n);
  if (fill.mode == FillMode::PerRowPoint) {
    if (d != n) {
      throw InvalidArgument("build_matrix: per-row fill needs a generator of dimension n");
    }
    const std::uint64_t base = skip + static_cast<std::uint64_t>(trial) * n;
    for (std::size_t i = 0; i < n; ++i) {
      src.point_into(base + i, std::span<double>(entries).subspan(i * n, n));
    }
  } else {
    if (d == 0) throw InvalidArgument("build_matrix: generator dimension is 0");
    std::vector<double> buf(d);
    std::uint64_t loaded = ~std::uint64_t{0};
    std::uint64_t pos = skip + static_cast<std::uint64_t>(trial) * n * n;
    for (std::size_t e = 0; e < n * n; ++e, ++pos) {
      const std::uint64_t idx = pos / d;
      if (idx != loaded) {
        src.point_into(idx, buf);
        loaded = idx;
      }
      entries[e] = buf[pos % d];
    }
  }
  return FuzzyMatrix(n, std::move(entries));
}

/// Uses the GeneratorSpec's own burn-in offset.
inline FuzzyMatrix build_matrix(const GeneratorSpec& spec, std::size_t n,
                                std::size_t trial, const FillStrategy& fill) {
  return build_matrix(Generator(spec), n, trial, fill, spec.resolved_skip());
}

// ---------------------------------------------------------------------------
// experiment

enum class CountRule { StrongOnly, StrongPlusWeak };

inline std::string_view to_string(CountRule r) {
  return r == CountRule::StrongOnly ? "strong" : "strong+weak";
}

inline CountRule parse_count_rule(std::string_view s) {
  if (s == "strong" || s == "strong-only") return CountRule::StrongOnly;
  if (s == "strong+weak" || s == "strong-plus-weak") return CountRule::StrongPlusWeak;
  throw InvalidArgument("unknown count rule '" + std::string(s) + "'");
}

/// Protocol defaults, in one place.
namespace defaults {
/// Sizes run when none are given. 1000 is opt-in (see allow_large).
inline const std::vector<std::size_t> kSizes = {5, 50, 100};
/// Sizes of the full table, including the expensive one.
inline const std::vector<std::size_t> kFullSizes = {5, 50, 100, 1000};
/// Sizes at or above this need allow_large.
constexpr std::size_t kLargeSize = 1000;
constexpr std::size_t kTrials = 1000;
constexpr FillMode kFill = FillMode::PerRowPoint;
constexpr std::size_t kStreamDim = 1;
constexpr CountRule kCountRule = CountRule::StrongPlusWeak;
constexpr std::size_t kMemoryCap = 10000;
// Skip: the Faure base p, 0 for Torus/Kronecker (GeneratorSpec::resolved_skip).
// Step cap: max(1000, 4n) (default_max_steps).
}  // namespace defaults

struct ExperimentConfig {
  std::vector<std::size_t> sizes = defaults::kSizes;
  std::size_t trials = defaults::kTrials;
  std::vector<GeneratorKind> generators = {GeneratorKind::Faure,
                                           GeneratorKind::Torus};
  FillStrategy fill{defaults::kFill, defaults::kStreamDim};
  /// Unset: the generator's default burn-in.
  std::optional<std::uint64_t> skip;
  /// Unset: default_max_steps(n).
  std::optional<std::size_t> max_steps;
  std::size_t memory_cap = defaults::kMemoryCap;
  CountRule count_rule = defaults::kCountRule;
  /// Kronecker multipliers; needs at least as many as the generator dimension.
  std::vector<double> irrationals;
  bool allow_large = false;
  /// 0: one worker per hardware thread.
  std::size_t workers = 0;
};

inline void validate(const ExperimentConfig& c) {
  if (c.sizes.empty()) throw InvalidArgument("config: sizes must be non-empty");
  for (auto n : c.sizes) {
    if (n == 0) throw InvalidArgument("config: sizes must be >= 1");
    if (n >= defaults::kLargeSize && !c.allow_large) {
      throw InvalidArgument("config: size " + std::to_string(n) +
                            " needs allow_large (--include-large)");
    }
  }
  if (c.trials == 0) throw InvalidArgument("config: trials must be >= 1");
  if (c.generators.empty()) throw InvalidArgument("config: no generator selected");
  if (c.fill.mode == FillMode::FlattenStream && c.fill.stream_dim == 0) {
    throw InvalidArgument("config: stream_dim must be >= 1");
  }
  if (c.max_steps && *c.max_steps == 0) {
    throw InvalidArgument("config: max_steps must be >= 1");
  }
}

/// Generator spec (with burn-in resolved) for one (generator, size) cell.
inline GeneratorSpec cell_spec(const ExperimentConfig& c, GeneratorKind kind,
                               std::size_t n) {
  const std::size_t dim = c.fill.mode == FillMode::PerRowPoint ? n : c.fill.stream_dim;
  GeneratorSpec spec;
  switch (kind) {
    case GeneratorKind::Faure: spec = GeneratorSpec::faure(dim); break;
    case GeneratorKind::Torus: spec = GeneratorSpec::torus(dim); break;
    case GeneratorKind::VanDerCorput:
      if (dim != 1) throw InvalidArgument("config: vdc needs a 1-D stream");
      spec = GeneratorSpec::van_der_corput();
      break;
    case GeneratorKind::Kronecker:
      if (c.irrationals.size() < dim) {
        throw InvalidArgument("config: kronecker needs " + std::to_string(dim) +
                              " irrationals, got " +
                              std::to_string(c.irrationals.size()));
      }
      spec = GeneratorSpec::kronecker(
          std::vector<double>(c.irrationals.begin(), c.irrationals.begin() + dim));
      break;
  }
  spec.skip = c.skip.value_or(spec.resolved_skip());
  return spec;
}

struct CellReport {
  std::string generator;
  std::size_t size = 0;
  std::size_t trials = 0;
  std::size_t strong = 0;
  std::size_t weak = 0;
  std::size_t periodic = 0;
  std::size_t not_found = 0;
  std::size_t headline = 0;
  /// Over trials whose cycle was found; empty when there are none.
  std::optional<std::size_t> tau_min;
  std::optional<double> tau_median;
  std::optional<std::size_t> tau_max;
  double seconds = 0.0;

  friend bool operator==(const CellReport&, const CellReport&) = default;
};

struct ExperimentReport {
  CountRule count_rule = defaults::kCountRule;
  std::vector<CellReport> cells;
};

struct TrialOutcome {
  std::optional<Ergodicity> classification;  // empty: CycleNotFound
  std::size_t tau = 0;
};

inline std::size_t resolve_workers(std::size_t requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Aggregates outcomes in the order given. Counting is commutative; the tau
/// median is taken over the sorted taus, so the order does not matter.
inline CellReport summarize_cell(std::string generator, std::size_t size,
                                 std::span<const TrialOutcome> outcomes,
                                 CountRule rule) {
  CellReport cell;
  cell.generator = std::move(generator);
  cell.size = size;
  cell.trials = outcomes.size();
  std::vector<std::size_t> taus;
  for (const auto& o : outcomes) {
    if (!o.classification) {
      ++cell.not_found;
      continue;
    }
    taus.push_back(o.tau);
    switch (*o.classification) {
      case Ergodicity::StrongErgodic: ++cell.strong; break;
      case Ergodicity::WeakErgodic: ++cell.weak; break;
      case Ergodicity::Periodic: ++cell.periodic; break;
    }
  }
  cell.headline = rule == CountRule::StrongOnly ? cell.strong : cell.strong + cell.weak;
  if (!taus.empty()) {
    std::sort(taus.begin(), taus.end());
    const std::size_t m = taus.size();
    cell.tau_min = taus.front();
    cell.tau_max = taus.back();
    cell.tau_median = m % 2 ? static_cast<double>(taus[m / 2])
                            : 0.5 * static_cast<double>(taus[m / 2 - 1] + taus[m / 2]);
  }
  return cell;
}

/// Classifies one matrix, turning CycleNotFound into an empty outcome.
inline TrialOutcome classify_trial(const FuzzyMatrix& p, const PowerOptions& opts) {
  try {
    const auto a = analyze_powers(p, opts);
    return {a.classification, a.tau};
  } catch (const CycleNotFound&) {
    return {};
  }
}

/// Runs `count` indexed jobs on `workers` threads. The first exception thrown
/// by any job is rethrown after all threads have joined.
template <typename Job>
void parallel_for(std::size_t count, std::size_t workers, Job&& job) {
  workers = std::min(std::max<std::size_t>(workers, 1), std::max<std::size_t>(count, 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          job(i);
        } catch (...) {
          std::lock_guard lock(error_mu);
          if (!error) error = std::current_exception();
          next = count;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

/// `make_source(kind, n)` must return a PointSource for the cell. The
/// burn-in comes from cell_spec regardless of the source.
template <typename Factory>
ExperimentReport run_experiment(const ExperimentConfig& config, Factory&& make_source) {
  validate(config);
  ExperimentReport report;
  report.count_rule = config.count_rule;
  const std::size_t workers = resolve_workers(config.workers);
  for (const auto kind : config.generators) {
    for (const auto n : config.sizes) {
      const auto start = std::chrono::steady_clock::now();
      const GeneratorSpec spec = cell_spec(config, kind, n);
      const auto source = make_source(kind, n);
      const std::uint64_t skip = spec.resolved_skip();
      PowerOptions opts;
      opts.max_steps = config.max_steps.value_or(default_max_steps(n));
      opts.memory_cap = config.memory_cap;

      std::vector<TrialOutcome> outcomes(config.trials);
      parallel_for(config.trials, workers, [&](std::size_t t) {
        outcomes[t] = classify_trial(build_matrix(source, n, t, config.fill, skip), opts);
      });
      auto cell = summarize_cell(std::string(to_string(kind)), n, outcomes,
                                 config.count_rule);
      cell.seconds = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - start).count();
      report.cells.push_back(std::move(cell));
    }
  }
  return report;
}

inline ExperimentReport run_experiment(const ExperimentConfig& config) {
  return run_experiment(config, [&](GeneratorKind kind, std::size_t n) {
    return Generator(cell_spec(config, kind, n));
  });
}

/// Per size present for both a Faure cell and a Torus/Kronecker cell:
/// whether the Kronecker-family headline is at least the Faure headline.
struct TrendCheck {
  std::size_t size = 0;
  std::size_t faure = 0;
  std::size_t kronecker = 0;
  bool holds() const noexcept { return kronecker >= faure; }
};

inline std::vector<TrendCheck> compare_generators(const ExperimentReport& report) {
  std::vector<TrendCheck> out;
  for (const auto& f : report.cells) {
    if (f.generator != to_string(GeneratorKind::Faure)) continue;
    for (const auto& k : report.cells) {
      if (k.size == f.size && (k.generator == to_string(GeneratorKind::Torus) ||
                               k.generator == to_string(GeneratorKind::Kronecker))) {
        out.push_back({f.size, f.headline, k.headline});
        break;
      }
    }
  }
  return out;
}

}  // namespace ergoq
