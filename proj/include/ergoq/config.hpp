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
 * Flat `key = value` experiment config files. `#` starts a comment; keys are
 * the long CLI flag names with '-' or '_':
 *
 *   sizes = 5,50,100
 *   trials = 1000
 *   generator = both          # faure | torus | kronecker | vdc | both | a,b
 *   fill = per-row            # per-row | flatten
 *   stream-dim = 1
 *   skip = 0                  # omit for the generator default
 *   max-steps = 1000          # omit for max(1000, 4n)
 *   memory-cap = 10000
 *   count-rule = strong+weak  # strong | strong+weak
 *   alpha = 1.4142135623730951,1.7320508075688772
 *   include-large = false
 *   workers = 0
 */

#pragma once

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "ergoq/error.hpp"
#include "ergoq/io.hpp"
#include "ergoq/simulation.hpp"

namespace ergoq {

namespace detail {

template <typename Int>
Int parse_unsigned(std::string_view key, std::string_view s) {
  s = trim(s);
  Int v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw InvalidArgument("config: '" + std::string(key) +
                          "' expects a non-negative integer, got '" +
                          std::string(s) + "'");
  }
  return v;
}

inline bool parse_bool(std::string_view key, std::string_view s) {
  s = trim(s);
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw InvalidArgument("config: '" + std::string(key) + "' expects a boolean");
}

}  // namespace detail

inline std::vector<std::size_t> parse_size_list(std::string_view s) {
  std::vector<std::size_t> out;
  for (auto f : detail::split(s, ',')) {
    out.push_back(detail::parse_unsigned<std::size_t>("sizes", f));
  }
  return out;
}

inline std::vector<double> parse_real_list(std::string_view s) {
  std::vector<double> out;
  for (auto f : detail::split(s, ',')) {
    const auto v = detail::parse_real(f);
    if (!v) throw InvalidArgument("config: bad real '" + std::string(f) + "'");
    out.push_back(*v);
  }
  return out;
}

/// "both" expands to Faure then Torus.
inline std::vector<GeneratorKind> parse_generator_list(std::string_view s) {
  std::vector<GeneratorKind> out;
  for (auto f : detail::split(s, ',')) {
    f = detail::trim(f);
    if (f == "both") {
      out.push_back(GeneratorKind::Faure);
      out.push_back(GeneratorKind::Torus);
    } else {
      out.push_back(parse_generator_kind(f));
    }
  }
  return out;
}

/// Applies one setting. Unknown keys are rejected.
inline void apply_setting(ExperimentConfig& c, std::string key, std::string_view value) {
  for (auto& ch : key) {
    if (ch == '_') ch = '-';
  }
  value = detail::trim(value);
  if (key == "sizes") {
    c.sizes = parse_size_list(value);
  } else if (key == "trials") {
    c.trials = detail::parse_unsigned<std::size_t>(key, value);
  } else if (key == "generator" || key == "generators") {
    c.generators = parse_generator_list(value);
  } else if (key == "fill") {
    c.fill.mode = parse_fill_mode(value);
  } else if (key == "stream-dim") {
    c.fill.stream_dim = detail::parse_unsigned<std::size_t>(key, value);
  } else if (key == "skip") {
    c.skip = detail::parse_unsigned<std::uint64_t>(key, value);
  } else if (key == "max-steps") {
    c.max_steps = detail::parse_unsigned<std::size_t>(key, value);
  } else if (key == "memory-cap") {
    c.memory_cap = detail::parse_unsigned<std::size_t>(key, value);
  } else if (key == "count-rule") {
    c.count_rule = parse_count_rule(value);
  } else if (key == "alpha" || key == "irrationals") {
    c.irrationals = parse_real_list(value);
  } else if (key == "include-large" || key == "allow-large") {
    c.allow_large = detail::parse_bool(key, value);
  } else if (key == "workers") {
    c.workers = detail::parse_unsigned<std::size_t>(key, value);
  } else {
    throw InvalidArgument("config: unknown key '" + key + "'");
  }
}

/// Layers a config file over `base`.
inline ExperimentConfig parse_config_text(std::string_view text,
                                          ExperimentConfig base = {}) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const auto body = detail::trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw InvalidArgument("config line " + std::to_string(lineno) +
                            ": expected key = value");
    }
    apply_setting(base, std::string(detail::trim(body.substr(0, eq))),
                  body.substr(eq + 1));
  }
  return base;
}

}  // namespace ergoq
