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

// ergoq command-line driver.
//
//   ergoq seq          dump points of a low-discrepancy sequence as CSV
//   ergoq classify     analyse the max-min powers of a matrix CSV
//   ergoq simulate     run the ergodicity counting experiment
//   ergoq discrepancy  star-discrepancy trend for doubling sample sizes
//
// Exit codes: 0 success, 1 usage or input error, 2 runtime error.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ergoq/ergoq.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ergoq::InvalidArgument("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

// Shared generator flags for seq and discrepancy.
struct GeneratorFlags {
  std::string generator = "faure";
  std::size_t dim = 1;
  std::optional<std::uint32_t> base;
  std::optional<std::uint64_t> skip;
  std::vector<double> alpha;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--dim", dim, "Dimension d");
    cmd->add_option("--base", base, "Prime base (faure, vdc)");
    cmd->add_option("--skip", skip, "First index (default: faure base p, else 0)");
    cmd->add_option("--alpha", alpha, "Kronecker multipliers, one per dimension")
        ->delimiter(',');
  }

  ergoq::GeneratorSpec spec(CLI::App* cmd) const {
    ergoq::GeneratorSpec s;
    s.kind = ergoq::parse_generator_kind(generator);
    s.dim = dim;
    s.base = base;
    s.skip = skip;
    if (s.kind == ergoq::GeneratorKind::Kronecker) {
      s.irrationals = alpha;
      if (cmd->count("--dim") == 0) s.dim = alpha.size();
    }
    ergoq::validate(s);
    return s;
  }
};

// ---------------------------------------------------------------------------
// seq

struct SeqCommand {
  GeneratorFlags gen;
  std::size_t count = 10;
  std::string format = "csv";
  std::string output;

  CLI::App* attach(CLI::App& app) {
    auto* cmd = app.add_subcommand("seq", "Dump points of a low-discrepancy sequence");
    cmd->add_option("--generator", gen.generator, "faure | torus | kronecker | vdc")
        ->capture_default_str();
    gen.add_to(cmd);
    cmd->add_option("--count", count, "Number of points")->capture_default_str();
    cmd->add_option("--format", format, "csv | json")->capture_default_str();
    cmd->add_option("--output", output, "Write to this file instead of stdout");
    return cmd;
  }

  int run(CLI::App* cmd) const {
    const auto spec = gen.spec(cmd);
    const ergoq::Generator g(spec);
    const std::uint64_t first = spec.resolved_skip();
    std::string text;
    if (format == "csv") {
      text = ergoq::dump_points_csv(g, first, count);
    } else if (format == "json") {
      nlohmann::json j = nlohmann::json::array();
      for (std::size_t k = 0; k < count; ++k) {
        j.push_back({{"i", first + k}, {"x", g.point(first + k).coords}});
      }
      text = j.dump() + "\n";
    } else {
      throw ergoq::InvalidArgument("seq: unknown format '" + format + "'");
    }
    if (output.empty()) {
      std::cout << text;
    } else {
      write_file(output, text);
    }
    return kExitOk;
  }
};

// ---------------------------------------------------------------------------
// classify

struct ClassifyCommand {
  std::string input;
  std::optional<std::size_t> max_steps;
  std::size_t memory_cap = ergoq::defaults::kMemoryCap;
  std::string format = "text";
  std::string stationary_out;

  CLI::App* attach(CLI::App& app) {
    auto* cmd = app.add_subcommand("classify", "Classify the max-min power behaviour of a matrix");
    cmd->add_option("--input,input", input, "Matrix CSV file")->required();
    cmd->add_option("--max-steps", max_steps, "Composition cap (default max(1000, 4n))");
    cmd->add_option("--memory-cap", memory_cap, "Stored powers before the tortoise/hare fallback")
        ->capture_default_str();
    cmd->add_option("--format", format, "text | json")->capture_default_str();
    cmd->add_option("--stationary-out", stationary_out,
                    "Write the stationary matrix here instead of inline");
    return cmd;
  }

  int run() const {
    const auto p = ergoq::parse_matrix_csv(read_file(input));
    ergoq::PowerOptions opts;
    opts.max_steps = max_steps;
    opts.memory_cap = memory_cap;
    ergoq::PowerAnalysis a;
    try {
      a = ergoq::analyze_powers(p, opts);
    } catch (const ergoq::CycleNotFound& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitRuntime;
    }
    if (a.stationary && !stationary_out.empty()) {
      write_file(stationary_out, ergoq::write_matrix_csv(*a.stationary));
    }
    if (format == "json") {
      nlohmann::ordered_json j;
      j["classification"] = std::string(ergoq::to_string(a.classification));
      j["tau"] = a.tau;
      j["period"] = a.period;
      j["steps_examined"] = a.steps_examined;
      if (a.stationary) {
        if (stationary_out.empty()) {
          auto rows = nlohmann::ordered_json::array();
          for (std::size_t i = 0; i < a.stationary->size(); ++i) {
            const auto r = a.stationary->row(i);
            rows.push_back(std::vector<double>(r.begin(), r.end()));
          }
          j["stationary"] = rows;
        } else {
          j["stationary"] = stationary_out;
        }
      }
      std::cout << j.dump(2) << "\n";
    } else if (format == "text") {
      std::cout << ergoq::to_string(a.classification) << ", tau=" << a.tau;
      if (a.period != 1) std::cout << ", period=" << a.period;
      std::cout << "\n";
      if (a.stationary) {
        if (stationary_out.empty()) {
          std::cout << "stationary:\n" << ergoq::write_matrix_csv(*a.stationary);
        } else {
          std::cout << "stationary: " << stationary_out << "\n";
        }
      }
    } else {
      throw ergoq::InvalidArgument("classify: unknown format '" + format + "'");
    }
    return kExitOk;
  }
};

// ---------------------------------------------------------------------------
// simulate

struct SimulateCommand {
  std::string config_path;
  std::string sizes;
  std::size_t trials = 0;
  std::string generator;
  std::string fill;
  std::size_t stream_dim = 1;
  std::uint64_t skip = 0;
  std::size_t max_steps = 0;
  std::size_t memory_cap = 0;
  std::string count_rule;
  std::vector<double> alpha;
  bool include_large = false;
  std::size_t workers = 0;
  std::string csv_out;
  std::string json_out;
  std::string markdown_out;
  bool no_timing = false;

  CLI::App* attach(CLI::App& app) {
    auto* cmd = app.add_subcommand("simulate", "Run the ergodicity counting experiment");
    cmd->add_option("--config", config_path, "Flat key = value config file");
    cmd->add_option("--sizes", sizes, "Comma-separated sizes (default 5,50,100)");
    cmd->add_option("--trials", trials, "Trials per size (default 1000)");
    cmd->add_option("--generator", generator, "faure | torus | kronecker | vdc | both (default both)");
    cmd->add_option("--fill", fill, "per-row | flatten (default per-row)");
    cmd->add_option("--stream-dim", stream_dim, "Generator dimension for flatten fill");
    cmd->add_option("--skip", skip, "Burn-in (default: faure base p, else 0)");
    cmd->add_option("--max-steps", max_steps, "Composition cap (default max(1000, 4n))");
    cmd->add_option("--memory-cap", memory_cap, "Stored powers before the tortoise/hare fallback");
    cmd->add_option("--count-rule", count_rule, "strong | strong+weak (default strong+weak)");
    cmd->add_option("--alpha", alpha, "Kronecker multipliers")->delimiter(',');
    cmd->add_flag("--include-large", include_large,
                  "Allow n >= 1000 (and add n=1000 to the default sizes)");
    cmd->add_option("--workers", workers, "Worker threads (default: $ERGOQ_WORKERS, else all cores)");
    cmd->add_option("--csv", csv_out, "Write the CSV report here");
    cmd->add_option("--json", json_out, "Write the JSON report here");
    cmd->add_option("--markdown", markdown_out, "Write the markdown tables here");
    cmd->add_flag("--no-timing", no_timing, "Leave wall-time out of the reports");
    return cmd;
  }

  ergoq::ExperimentConfig config(CLI::App* cmd) const {
    ergoq::ExperimentConfig c;
    if (!config_path.empty()) c = ergoq::parse_config_text(read_file(config_path), c);
    const bool sizes_from_file = c.sizes != ergoq::defaults::kSizes;
    auto given = [&](const char* name) { return cmd->count(name) > 0; };
    if (given("--sizes")) c.sizes = ergoq::parse_size_list(sizes);
    if (given("--trials")) c.trials = trials;
    if (given("--generator")) c.generators = ergoq::parse_generator_list(generator);
    if (given("--fill")) c.fill.mode = ergoq::parse_fill_mode(fill);
    if (given("--stream-dim")) c.fill.stream_dim = stream_dim;
    if (given("--skip")) c.skip = skip;
    if (given("--max-steps")) c.max_steps = max_steps;
    if (given("--memory-cap")) c.memory_cap = memory_cap;
    if (given("--count-rule")) c.count_rule = ergoq::parse_count_rule(count_rule);
    if (given("--alpha")) c.irrationals = alpha;
    if (include_large) c.allow_large = true;
    if (c.allow_large && !given("--sizes") && !sizes_from_file) {
      c.sizes = ergoq::defaults::kFullSizes;
    }
    if (given("--workers")) {
      c.workers = workers;
    } else if (const char* env = std::getenv("ERGOQ_WORKERS"); env && c.workers == 0) {
      c.workers = ergoq::parse_size_list(env).at(0);
    }
    ergoq::validate(c);
    return c;
  }

  int run(CLI::App* cmd) const {
    const auto cfg = config(cmd);
    const auto report = ergoq::run_experiment(cfg);
    const ergoq::ReportOptions opts{!no_timing};
    if (!csv_out.empty()) write_file(csv_out, ergoq::emit_report(report, ergoq::ReportFormat::Csv, opts));
    if (!json_out.empty()) write_file(json_out, ergoq::emit_report(report, ergoq::ReportFormat::Json, opts));
    const auto md = ergoq::emit_report(report, ergoq::ReportFormat::Markdown, opts);
    if (!markdown_out.empty()) write_file(markdown_out, md);
    std::cout << md;
    for (const auto& t : ergoq::compare_generators(report)) {
      std::cerr << "trend n=" << t.size << ": faure=" << t.faure
                << " kronecker=" << t.kronecker
                << (t.holds() ? " ok" : " WARNING: kronecker below faure") << "\n";
    }
    return kExitOk;
  }
};

// ---------------------------------------------------------------------------
// discrepancy

struct DiscrepancyCommand {
  GeneratorFlags gen;
  std::size_t min_n = 16;
  std::size_t max_n = 4096;

  CLI::App* attach(CLI::App& app) {
    auto* cmd = app.add_subcommand("discrepancy", "Star discrepancy for n = min-n, 2 min-n, ... <= max-n");
    gen.generator = "torus";
    cmd->add_option("--generator", gen.generator, "torus | kronecker | faure | vdc | midpoint")
        ->capture_default_str();
    gen.add_to(cmd);
    cmd->add_option("--min-n", min_n, "First sample size")->capture_default_str();
    cmd->add_option("--max-n", max_n, "Largest sample size")->capture_default_str();
    return cmd;
  }

  int run(CLI::App* cmd) const {
    if (min_n == 0 || min_n > max_n) {
      throw ergoq::InvalidArgument("discrepancy: need 1 <= min-n <= max-n");
    }
    if (gen.dim > 2) throw ergoq::InvalidArgument("discrepancy: dim must be 1 or 2");
    std::vector<std::size_t> ns;
    for (std::size_t n = min_n; n <= max_n; n *= 2) ns.push_back(n);

    std::string out = gen.dim == 1 ? "n,star,normalized,extreme\n" : "n,star,normalized\n";
    auto row = [&](std::size_t n, double star, std::optional<double> extreme) {
      out += std::to_string(n) + ',' + ergoq::format_real(star) + ',' +
             ergoq::format_real(ergoq::normalized_discrepancy(n, star));
      if (extreme) out += ',' + ergoq::format_real(*extreme);
      out += '\n';
    };

    if (gen.generator == "midpoint") {
      if (gen.dim != 1) throw ergoq::InvalidArgument("discrepancy: midpoint set is 1-D");
      for (auto n : ns) {
        const auto xs = ergoq::midpoint_set(n);
        row(n, ergoq::star_discrepancy_1d(xs), ergoq::extreme_discrepancy_1d(xs));
      }
    } else {
      const auto spec = gen.spec(cmd);
      if (spec.dim > 2) throw ergoq::InvalidArgument("discrepancy: dim must be 1 or 2");
      if (spec.dim == 1) {
        const ergoq::Generator g(spec);
        const std::uint64_t first = spec.resolved_skip();
        std::vector<double> xs;
        for (std::size_t i = 0; i < max_n; ++i) xs.push_back(g.point(first + i)[0]);
        for (auto n : ns) {
          const std::span<const double> head(xs.data(), n);
          row(n, ergoq::star_discrepancy_1d(head), ergoq::extreme_discrepancy_1d(head));
        }
      } else {
        for (const auto& r : ergoq::discrepancy_trend(spec, ns)) row(r.n, r.star, std::nullopt);
      }
    }
    std::cout << out;
    return kExitOk;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ergoq: fuzzy Markov chain ergodicity from low-discrepancy sequences"};
  app.require_subcommand(1);

  SeqCommand seq;
  ClassifyCommand classify;
  SimulateCommand simulate;
  DiscrepancyCommand discrepancy;
  auto* seq_cmd = seq.attach(app);
  auto* classify_cmd = classify.attach(app);
  auto* simulate_cmd = simulate.attach(app);
  auto* discrepancy_cmd = discrepancy.attach(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (seq_cmd->parsed()) return seq.run(seq_cmd);
    if (classify_cmd->parsed()) return classify.run();
    if (simulate_cmd->parsed()) return simulate.run(simulate_cmd);
    if (discrepancy_cmd->parsed()) return discrepancy.run(discrepancy_cmd);
  } catch (const ergoq::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ergoq::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
