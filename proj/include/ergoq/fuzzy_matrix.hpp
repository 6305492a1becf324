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
 * Fuzzy transition relations over the max-min semiring.
 *
 * | Set   | "+" | "*" | "+" neutral | "*" neutral |
 * | [0,1] | max | min |      0      |      1      |
 *
 * Rows of a FuzzyMatrix hold membership values, not probabilities, and need
 * not sum to one. Max and min only ever select one of their operands, so every
 * entry of a product is bit-identical to some entry of a factor. Equality
 * tests in this library are therefore exact.
 */

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ergoq/error.hpp"

namespace ergoq {

namespace detail {

// Rejects NaN and values outside [0,1]; folds -0.0 into +0.0 so that value
// equality and bit equality coincide.
inline double membership(double v) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw InvalidArgument("membership value outside [0,1]: " + std::to_string(v));
  }
  return v == 0.0 ? 0.0 : v;
}

}  // namespace detail

/// Fuzzy set over the states {0, ..., n-1}.
class FuzzyState {
 public:
  FuzzyState() = default;
  explicit FuzzyState(std::size_t n) : v_(n, 0.0) {}
  explicit FuzzyState(std::vector<double> values) : v_(std::move(values)) {
    for (auto& x : v_) x = detail::membership(x);
  }
  FuzzyState(std::initializer_list<double> values)
      : FuzzyState(std::vector<double>(values)) {}

  std::size_t size() const noexcept { return v_.size(); }
  double operator[](std::size_t i) const { return v_[i]; }
  std::span<const double> values() const noexcept { return v_; }

  /// True when the largest membership is exactly 1.
  bool is_normalized() const noexcept {
    return !v_.empty() && *std::max_element(v_.begin(), v_.end()) == 1.0;
  }

  friend bool operator==(const FuzzyState&, const FuzzyState&) = default;

 private:
  std::vector<double> v_;
};

/// Square matrix of membership values, row-major.
class FuzzyMatrix {
 public:
  FuzzyMatrix() = default;

  /// n x n zero matrix (the annihilator).
  explicit FuzzyMatrix(std::size_t n) : n_(n), v_(n * n, 0.0) {}

  FuzzyMatrix(std::size_t n, std::vector<double> entries)
      : n_(n), v_(std::move(entries)) {
    if (v_.size() != n_ * n_) {
      throw InvalidArgument("FuzzyMatrix: expected " + std::to_string(n_ * n_) +
                            " entries, got " + std::to_string(v_.size()));
    }
    for (auto& x : v_) x = detail::membership(x);
  }

  FuzzyMatrix(std::initializer_list<std::initializer_list<double>> rows)
      : n_(rows.size()) {
    v_.reserve(n_ * n_);
    for (const auto& r : rows) {
      if (r.size() != n_) throw InvalidArgument("FuzzyMatrix: rows must be square");
      for (double x : r) v_.push_back(detail::membership(x));
    }
  }

  static FuzzyMatrix identity(std::size_t n) {
    FuzzyMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m.v_[i * n + i] = 1.0;
    return m;
  }

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return v_[i * n_ + j]; }
  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(v_).subspan(i * n_, n_);
  }
  std::span<const double> values() const noexcept { return v_; }

  void set(std::size_t i, std::size_t j, double v) {
    v_[i * n_ + j] = detail::membership(v);
  }

  friend bool operator==(const FuzzyMatrix&, const FuzzyMatrix&) = default;

 private:
  friend FuzzyMatrix max_min_compose(const FuzzyMatrix&, const FuzzyMatrix&);

  std::size_t n_ = 0;
  std::vector<double> v_;
};

/// C(i,j) = max_k min(A(i,k), B(k,j)).
inline FuzzyMatrix max_min_compose(const FuzzyMatrix& a, const FuzzyMatrix& b) {
  if (a.size() != b.size()) {
    throw InvalidArgument("max_min_compose: dimension mismatch");
  }
  const std::size_t n = a.size();
  FuzzyMatrix c(n);
  const double* bv = b.v_.data();
  for (std::size_t i = 0; i < n; ++i) {
    double* out = c.v_.data() + i * n;
    for (std::size_t k = 0; k < n; ++k) {
      const double aik = a.v_[i * n + k];
      if (aik == 0.0) continue;
      const double* brow = bv + k * n;
      // Written as selects so the loop vectorises to minpd/maxpd.
      for (std::size_t j = 0; j < n; ++j) {
        const double m = brow[j] < aik ? brow[j] : aik;
        out[j] = out[j] < m ? m : out[j];
      }
    }
  }
  return c;
}

/// x'(j) = max_i min(x(i), P(i,j)).
inline FuzzyState max_min_apply(const FuzzyState& x, const FuzzyMatrix& p) {
  if (x.size() != p.size()) {
    throw InvalidArgument("max_min_apply: dimension mismatch");
  }
  const std::size_t n = p.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = x[i];
    if (xi == 0.0) continue;
    const auto r = p.row(i);
    for (std::size_t j = 0; j < n; ++j) {
      out[j] = std::max(out[j], std::min(xi, r[j]));
    }
  }
  return FuzzyState(std::move(out));
}

/// Entrywise A <= B.
inline bool entrywise_leq(const FuzzyMatrix& a, const FuzzyMatrix& b) {
  if (a.size() != b.size()) return false;
  const auto av = a.values();
  const auto bv = b.values();
  for (std::size_t k = 0; k < av.size(); ++k) {
    if (av[k] > bv[k]) return false;
  }
  return true;
}

/// True iff every row equals row 0 bit-exactly. Vacuously true for n <= 1.
inline bool rows_identical(const FuzzyMatrix& p) {
  const std::size_t n = p.size();
  if (n <= 1) return true;
  const auto first = p.row(0);
  for (std::size_t i = 1; i < n; ++i) {
    if (std::memcmp(first.data(), p.row(i).data(), n * sizeof(double)) != 0) {
      return false;
    }
  }
  return true;
}

/// Hash of the exact entry bytes.
inline std::size_t hash_value(const FuzzyMatrix& p) {
  const auto v = p.values();
  const std::string_view bytes(reinterpret_cast<const char*>(v.data()),
                               v.size_bytes());
  return std::hash<std::string_view>{}(bytes) ^ (p.size() * 0x9e3779b97f4a7c15ULL);
}

}  // namespace ergoq
