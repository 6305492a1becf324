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

#pragma once

#include <algorithm>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ergoq/error.hpp"
#include "ergoq/io.hpp"
#include "ergoq/simulation.hpp"

namespace ergoq {

enum class ReportFormat { Csv, Json, Markdown };

inline ReportFormat parse_report_format(std::string_view s) {
  if (s == "csv") return ReportFormat::Csv;
  if (s == "json") return ReportFormat::Json;
  if (s == "markdown" || s == "md" || s == "markdown-table") return ReportFormat::Markdown;
  throw InvalidArgument("unknown report format '" + std::string(s) + "'");
}

struct ReportOptions {
  /// Wall-time is the only non-deterministic field; leave it out to get
  /// byte-stable output.
  bool timing = true;
};

inline constexpr std::string_view kReportCsvHeader =
    "generator,size,trials,strong,weak,periodic,not_found,headline,"
    "tau_min,tau_median,tau_max,seconds\n";

inline constexpr std::string_view kMarkdownHeader =
    "| Size | Number of Ergodic fuzzy Markov chains |\n"
    "|------|---------------------------------------|\n";

namespace detail {

inline std::string format_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", s);
  return buf;
}

inline std::string report_csv(const ExperimentReport& r, const ReportOptions& o) {
  std::string out(kReportCsvHeader);
  for (const auto& c : r.cells) {
    out += c.generator + ',' + std::to_string(c.size) + ',' +
           std::to_string(c.trials) + ',' + std::to_string(c.strong) + ',' +
           std::to_string(c.weak) + ',' + std::to_string(c.periodic) + ',' +
           std::to_string(c.not_found) + ',' + std::to_string(c.headline) + ',';
    if (c.tau_min) out += std::to_string(*c.tau_min);
    out += ',';
    if (c.tau_median) out += format_real(*c.tau_median);
    out += ',';
    if (c.tau_max) out += std::to_string(*c.tau_max);
    out += ',';
    if (o.timing) out += format_seconds(c.seconds);
    out += '\n';
  }
  return out;
}

inline std::string report_markdown(const ExperimentReport& r) {
  if (r.cells.empty()) return std::string(kMarkdownHeader);
  std::vector<std::string> order;
  for (const auto& c : r.cells) {
    if (std::find(order.begin(), order.end(), c.generator) == order.end()) {
      order.push_back(c.generator);
    }
  }
  std::string out;
  for (const auto& g : order) {
    if (!out.empty()) out += '\n';
    out += "### " + g + " (" + std::string(to_string(r.count_rule)) + ")\n\n";
    out += kMarkdownHeader;
    for (const auto& c : r.cells) {
      if (c.generator != g) continue;
      out += "| n=" + std::to_string(c.size) + " | " + std::to_string(c.headline) + " |\n";
    }
  }
  return out;
}

inline std::string report_json(const ExperimentReport& r, const ReportOptions& o) {
  nlohmann::ordered_json j;
  j["count_rule"] = std::string(to_string(r.count_rule));
  j["cells"] = nlohmann::ordered_json::array();
  for (const auto& c : r.cells) {
    nlohmann::ordered_json cell;
    cell["generator"] = c.generator;
    cell["size"] = c.size;
    cell["trials"] = c.trials;
    cell["strong"] = c.strong;
    cell["weak"] = c.weak;
    cell["periodic"] = c.periodic;
    cell["not_found"] = c.not_found;
    cell["headline"] = c.headline;
    cell["tau_min"] = c.tau_min ? nlohmann::ordered_json(*c.tau_min) : nullptr;
    cell["tau_median"] = c.tau_median ? nlohmann::ordered_json(*c.tau_median) : nullptr;
    cell["tau_max"] = c.tau_max ? nlohmann::ordered_json(*c.tau_max) : nullptr;
    cell["seconds"] = o.timing ? nlohmann::ordered_json(c.seconds) : nullptr;
    j["cells"].push_back(std::move(cell));
  }
  return j.dump(2) + "\n";
}

}  // namespace detail

inline std::string emit_report(const ExperimentReport& report, ReportFormat format,
                               const ReportOptions& opts = {}) {
  switch (format) {
    case ReportFormat::Csv: return detail::report_csv(report, opts);
    case ReportFormat::Json: return detail::report_json(report, opts);
    case ReportFormat::Markdown: return detail::report_markdown(report);
  }
  return {};
}

/// Inverse of emit_report(..., ReportFormat::Json). A null seconds field
/// reads back as 0.
inline ExperimentReport parse_report_json(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    ExperimentReport r;
    r.count_rule = parse_count_rule(j.at("count_rule").get<std::string>());
    for (const auto& c : j.at("cells")) {
      CellReport cell;
      cell.generator = c.at("generator").get<std::string>();
      cell.size = c.at("size").get<std::size_t>();
      cell.trials = c.at("trials").get<std::size_t>();
      cell.strong = c.at("strong").get<std::size_t>();
      cell.weak = c.at("weak").get<std::size_t>();
      cell.periodic = c.at("periodic").get<std::size_t>();
      cell.not_found = c.at("not_found").get<std::size_t>();
      cell.headline = c.at("headline").get<std::size_t>();
      if (!c.at("tau_min").is_null()) cell.tau_min = c["tau_min"].get<std::size_t>();
      if (!c.at("tau_median").is_null()) cell.tau_median = c["tau_median"].get<double>();
      if (!c.at("tau_max").is_null()) cell.tau_max = c["tau_max"].get<std::size_t>();
      if (!c.at("seconds").is_null()) cell.seconds = c["seconds"].get<double>();
      r.cells.push_back(std::move(cell));
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("report json: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("report json: ") + e.what());
  }
}

}  // namespace ergoq
