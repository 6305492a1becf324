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
 * Text formats: matrix CSV and the point-dump CSV. Reals are written with 17
 * significant digits so that every double survives a write/read round trip
 * bit-exactly.
 */

#pragma once

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "ergoq/error.hpp"
#include "ergoq/fuzzy_matrix.hpp"
#include "ergoq/qrseq.hpp"

namespace ergoq {

inline std::string format_real(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v,
                                 std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::optional<double> parse_real(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    return std::nullopt;
  }
  return v;
}

inline std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos
                                         ? std::string_view::npos
                                         : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace detail

/// n rows of n comma-separated values in [0,1]. A first line containing a
/// non-numeric field is taken as a header and skipped. Blank lines are ignored.
inline FuzzyMatrix parse_matrix_csv(std::string_view text) {
  std::vector<std::vector<double>> rows;
  bool first = true;
  std::size_t lineno = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::trim(line).empty()) continue;
    const auto fields = detail::split(line, ',');
    std::vector<double> row;
    row.reserve(fields.size());
    bool numeric = true;
    for (auto f : fields) {
      const auto v = detail::parse_real(f);
      if (!v) {
        numeric = false;
        break;
      }
      row.push_back(*v);
    }
    if (!numeric) {
      if (first) {
        first = false;
        continue;
      }
      throw ParseError("matrix csv line " + std::to_string(lineno) +
                       ": non-numeric field");
    }
    first = false;
    for (double v : row) {
      if (!(v >= 0.0 && v <= 1.0)) {
        throw ParseError("matrix csv line " + std::to_string(lineno) +
                         ": value outside [0,1]");
      }
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("matrix csv: no data rows");
  const std::size_t n = rows.size();
  std::vector<double> flat;
  flat.reserve(n * n);
  for (const auto& r : rows) {
    if (r.size() != n) {
      throw ParseError("matrix csv: expected a square matrix, got " +
                       std::to_string(n) + " rows with " +
                       std::to_string(r.size()) + " columns");
    }
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return FuzzyMatrix(n, std::move(flat));
}

inline std::string write_matrix_csv(const FuzzyMatrix& m) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (j) out += ',';
      out += format_real(m(i, j));
    }
    out += '\n';
  }
  return out;
}

/// Header "i,x1,...,xd", then one row per point.
inline std::string point_dump_header(std::size_t dim) {
  std::string out = "i";
  for (std::size_t k = 1; k <= dim; ++k) out += ",x" + std::to_string(k);
  out += '\n';
  return out;
}

inline std::string point_dump_row(std::uint64_t i, std::span<const double> coords) {
  std::string out = std::to_string(i);
  for (double c : coords) {
    out += ',';
    out += format_real(c);
  }
  out += '\n';
  return out;
}

/// `count` points starting at raw index `first`.
inline std::string dump_points_csv(const Generator& gen, std::uint64_t first,
                                   std::size_t count) {
  std::string out = point_dump_header(gen.dimension());
  std::vector<double> buf(gen.dimension());
  for (std::size_t k = 0; k < count; ++k) {
    gen.point_into(first + k, buf);
    out += point_dump_row(first + k, buf);
  }
  return out;
}

}  // namespace ergoq
