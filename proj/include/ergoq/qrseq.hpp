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
 * Indexable low-discrepancy sequences: van der Corput radical inverse,
 * Faure (single prime base, Pascal-matrix digit scrambling between
 * dimensions) and Kronecker / Torus (fractional parts of integer multiples
 * of irrationals).
 *
 * Every generator is stateless: point i is a pure function of the spec and
 * i, so points may be requested in any order and from any thread.
 *
 * Faure base rule: the base is the smallest prime strictly greater than the
 * dimension (3 for d = 2, 5 for d = 3 or 4). Most QMC libraries use the
 * smallest prime >= d instead; the two differ when d itself is prime. A
 * caller may still pass an explicit prime base >= d.
 *
 * Kronecker precision: each irrational is held as an unevaluated double-double
 * sum hi + lo and i * hi is split exactly with an FMA, so the fractional part
 * of i * alpha is accurate to about 1e-16 for every i < 2^53.
 */

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ergoq/error.hpp"

namespace ergoq {

// ---------------------------------------------------------------------------
// primes

constexpr bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t f = 3; f * f <= n; f += 2) {
    if (n % f == 0) return false;
  }
  return true;
}

/// Smallest prime strictly greater than d; d = 1 maps to 2 (1-D Faure is
/// base-2 van der Corput).
constexpr std::uint32_t smallest_prime_greater(std::uint32_t d) {
  if (d == 0) throw InvalidArgument("smallest_prime_greater: d must be >= 1");
  if (d == 1) return 2;
  std::uint32_t p = d + 1;
  while (!is_prime(p)) ++p;
  return p;
}

/// The first `count` primes, in increasing order.
inline std::vector<std::uint32_t> first_primes(std::size_t count) {
  std::vector<std::uint32_t> out;
  out.reserve(count);
  for (std::uint32_t c = 2; out.size() < count; ++c) {
    if (is_prime(c)) out.push_back(c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// digits and radical inverse

/// Base-p expansion of a non-negative integer, least-significant digit first.
struct DigitVector {
  std::vector<std::uint32_t> digits;
  std::uint32_t base = 2;

  /// Sum of digits[j] * base^j. Only meaningful when it fits in 64 bits.
  std::uint64_t value() const {
    std::uint64_t v = 0;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
      v = v * base + *it;
    }
    return v;
  }

  friend bool operator==(const DigitVector&, const DigitVector&) = default;
};

inline DigitVector to_digits(std::uint64_t n, std::uint32_t p) {
  if (p < 2) throw InvalidArgument("to_digits: base must be >= 2");
  DigitVector out{{}, p};
  do {
    out.digits.push_back(static_cast<std::uint32_t>(n % p));
    n /= p;
  } while (n != 0);
  return out;
}

namespace detail {

// Horner evaluation from the most significant digit: ((d_{k-1}/p + d_{k-2})/p
// + ...)/p. Rounding can land on 1.0 once p^-k drops below half an ulp.
inline double radical_inverse(std::span<const std::uint32_t> digits,
                              std::uint32_t base) noexcept {
  const double inv = 1.0 / static_cast<double>(base);
  double v = 0.0;
  for (std::size_t j = digits.size(); j-- > 0;) {
    v = (v + static_cast<double>(digits[j])) * inv;
  }
  return v < 1.0 ? v : std::nextafter(1.0, 0.0);
}

}  // namespace detail

/// Mirrors the digits across the radix point: sum of digits[j] * p^-(j+1).
inline double radical_inverse(const DigitVector& dv) noexcept {
  return detail::radical_inverse(dv.digits, dv.base);
}

namespace detail {

// Binomial coefficients mod p for rows 0..63 (enough for any 64-bit index).
class BinomialModTable {
 public:
  static constexpr std::size_t kRows = 64;

  explicit BinomialModTable(std::uint32_t p) : p_(p), c_(kRows * kRows, 0) {
    for (std::size_t i = 0; i < kRows; ++i) {
      at(i, 0) = 1 % p;
      for (std::size_t j = 1; j <= i; ++j) {
        at(i, j) = (at(i - 1, j - 1) + (j < i ? at(i - 1, j) : 0)) % p;
      }
    }
  }

  std::uint32_t operator()(std::size_t i, std::size_t j) const {
    return c_[i * kRows + j];
  }
  std::uint32_t base() const { return p_; }

  // out[j] = sum_{i >= j} C(i, j) * in[i] mod p. `in` and `out` must not alias.
  void pascal(std::span<const std::uint32_t> in,
              std::span<std::uint32_t> out) const {
    const std::size_t k = in.size();
    for (std::size_t j = 0; j < k; ++j) {
      std::uint64_t acc = 0;
      for (std::size_t i = j; i < k; ++i) {
        acc += static_cast<std::uint64_t>((*this)(i, j)) * in[i];
      }
      out[j] = static_cast<std::uint32_t>(acc % p_);
    }
  }

 private:
  std::uint32_t& at(std::size_t i, std::size_t j) { return c_[i * kRows + j]; }

  std::uint32_t p_;
  std::vector<std::uint32_t> c_;
};

}  // namespace detail

/// One application of the Faure digit scrambling (upper-triangular Pascal
/// matrix mod p). Same length and base as the input.
inline DigitVector pascal_permute(const DigitVector& dv) {
  if (dv.digits.size() > detail::BinomialModTable::kRows) {
    throw InvalidArgument("pascal_permute: more than 64 digits");
  }
  detail::BinomialModTable table(dv.base);
  DigitVector out{std::vector<std::uint32_t>(dv.digits.size()), dv.base};
  table.pascal(dv.digits, out.digits);
  return out;
}

// ---------------------------------------------------------------------------
// generator specs

enum class GeneratorKind { Faure, Kronecker, Torus, VanDerCorput };

inline std::string_view to_string(GeneratorKind k) {
  switch (k) {
    case GeneratorKind::Faure: return "faure";
    case GeneratorKind::Kronecker: return "kronecker";
    case GeneratorKind::Torus: return "torus";
    case GeneratorKind::VanDerCorput: return "vdc";
  }
  return "?";
}

inline GeneratorKind parse_generator_kind(std::string_view s) {
  if (s == "faure") return GeneratorKind::Faure;
  if (s == "kronecker") return GeneratorKind::Kronecker;
  if (s == "torus") return GeneratorKind::Torus;
  if (s == "vdc" || s == "van-der-corput") return GeneratorKind::VanDerCorput;
  throw InvalidArgument("unknown generator '" + std::string(s) + "'");
}

/// A point of the unit cube [0,1)^d.
struct Point {
  std::vector<double> coords;

  std::size_t dim() const noexcept { return coords.size(); }
  double operator[](std::size_t k) const { return coords[k]; }

  friend bool operator==(const Point&, const Point&) = default;
};

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::Torus;
  std::size_t dim = 1;
  /// Faure / van der Corput only. Unset means the default for the kind.
  std::optional<std::uint32_t> base;
  /// Kronecker only: one positive multiplier per dimension.
  std::vector<double> irrationals;
  /// Burn-in offset used by stream consumers. Unset means the default for
  /// the kind: the base for Faure, 0 otherwise.
  std::optional<std::uint64_t> skip;

  static GeneratorSpec faure(std::size_t dim) {
    return {GeneratorKind::Faure, dim, std::nullopt, {}, std::nullopt};
  }
  static GeneratorSpec torus(std::size_t dim) {
    return {GeneratorKind::Torus, dim, std::nullopt, {}, std::nullopt};
  }
  static GeneratorSpec kronecker(std::vector<double> alphas) {
    const std::size_t d = alphas.size();
    return {GeneratorKind::Kronecker, d, std::nullopt, std::move(alphas),
            std::nullopt};
  }
  static GeneratorSpec van_der_corput(std::uint32_t base = 2) {
    return {GeneratorKind::VanDerCorput, 1, base, {}, std::nullopt};
  }

  std::uint32_t resolved_base() const {
    switch (kind) {
      case GeneratorKind::Faure:
        return base ? *base
                    : smallest_prime_greater(static_cast<std::uint32_t>(dim));
      case GeneratorKind::VanDerCorput:
        return base.value_or(2);
      default:
        return 0;
    }
  }

  std::uint64_t resolved_skip() const {
    if (skip) return *skip;
    return kind == GeneratorKind::Faure ? resolved_base() : 0;
  }
};

inline void validate(const GeneratorSpec& spec) {
  if (spec.dim == 0) throw InvalidArgument("generator dimension must be >= 1");
  switch (spec.kind) {
    case GeneratorKind::Faure: {
      if (spec.dim > 100000) throw InvalidArgument("faure: dimension too large");
      const auto p = spec.resolved_base();
      if (!is_prime(p)) throw InvalidArgument("faure: base must be prime");
      if (p < spec.dim) throw InvalidArgument("faure: base must be >= dim");
      break;
    }
    case GeneratorKind::VanDerCorput:
      if (spec.dim != 1) throw InvalidArgument("vdc: dimension must be 1");
      if (!is_prime(spec.resolved_base())) {
        throw InvalidArgument("vdc: base must be prime");
      }
      break;
    case GeneratorKind::Kronecker:
      if (spec.irrationals.size() != spec.dim) {
        throw InvalidArgument("kronecker: need exactly one irrational per dimension");
      }
      for (double a : spec.irrationals) {
        if (!(a > 0.0) || !std::isfinite(a)) {
          throw InvalidArgument("kronecker: irrationals must be positive and finite");
        }
      }
      break;
    case GeneratorKind::Torus:
      if (spec.dim > 100000) throw InvalidArgument("torus: dimension too large");
      break;
  }
}

// ---------------------------------------------------------------------------
// generator

/// Precomputed state for one GeneratorSpec. Immutable after construction and
/// safe to share between threads.
class Generator {
 public:
  explicit Generator(GeneratorSpec spec) : spec_(std::move(spec)) {
    validate(spec_);
    switch (spec_.kind) {
      case GeneratorKind::Faure:
      case GeneratorKind::VanDerCorput:
        binom_.emplace(spec_.resolved_base());
        break;
      case GeneratorKind::Torus: {
        for (auto p : first_primes(spec_.dim)) {
          const double pd = static_cast<double>(p);
          const double hi = std::sqrt(pd);
          // p - hi^2 is exact via fma; first-order Newton correction.
          const double lo = std::fma(-hi, hi, pd) / (2.0 * hi);
          alphas_.push_back({hi, lo});
        }
        break;
      }
      case GeneratorKind::Kronecker:
        for (double a : spec_.irrationals) alphas_.push_back({a, 0.0});
        break;
    }
  }

  const GeneratorSpec& spec() const noexcept { return spec_; }
  std::size_t dimension() const noexcept { return spec_.dim; }

  void point_into(std::uint64_t i, std::span<double> out) const {
    if (out.size() != spec_.dim) {
      throw InvalidArgument("point_into: output span has wrong dimension");
    }
    if (binom_) {
      faure_into(i, out);
    } else {
      kronecker_into(i, out);
    }
  }

  Point point(std::uint64_t i) const {
    Point p{std::vector<double>(spec_.dim)};
    point_into(i, p.coords);
    return p;
  }

 private:
  struct DoubleDouble {
    double hi;
    double lo;
  };

  void faure_into(std::uint64_t i, std::span<double> out) const {
    const std::uint32_t p = binom_->base();
    std::array<std::uint32_t, 64> a{};
    std::array<std::uint32_t, 64> b{};
    std::size_t k = 0;
    do {
      a[k++] = static_cast<std::uint32_t>(i % p);
      i /= p;
    } while (i != 0);
    std::span<std::uint32_t> cur(a.data(), k);
    std::span<std::uint32_t> next(b.data(), k);
    out[0] = detail::radical_inverse(cur, p);
    for (std::size_t d = 1; d < out.size(); ++d) {
      binom_->pascal(cur, next);
      std::swap(cur, next);
      out[d] = detail::radical_inverse(cur, p);
    }
  }

  void kronecker_into(std::uint64_t i, std::span<double> out) const {
    if (i >= (std::uint64_t{1} << 53)) {
      throw InvalidArgument("kronecker: index must be < 2^53");
    }
    const double x = static_cast<double>(i);
    for (std::size_t k = 0; k < out.size(); ++k) {
      const auto [hi, lo] = alphas_[k];
      const double prod = x * hi;
      const double err = std::fma(x, hi, -prod);
      double f = (prod - std::floor(prod)) + (err + x * lo);
      f -= std::floor(f);
      out[k] = f < 1.0 ? f : std::nextafter(1.0, 0.0);
    }
  }

  GeneratorSpec spec_;
  std::optional<detail::BinomialModTable> binom_;
  std::vector<DoubleDouble> alphas_;
};

/// Point i of a Faure sequence (raw index, no burn-in applied).
inline Point faure_point(std::uint64_t i, const GeneratorSpec& spec) {
  if (spec.kind != GeneratorKind::Faure) {
    throw InvalidArgument("faure_point: spec is not a Faure generator");
  }
  return Generator(spec).point(i);
}

/// Point i of a Kronecker or Torus sequence (raw index, no burn-in applied).
inline Point kronecker_point(std::uint64_t i, const GeneratorSpec& spec) {
  if (spec.kind != GeneratorKind::Kronecker &&
      spec.kind != GeneratorKind::Torus) {
    throw InvalidArgument("kronecker_point: spec is not a Kronecker/Torus generator");
  }
  return Generator(spec).point(i);
}

}  // namespace ergoq
