#pragma once

// Line-oriented "key = value" experiment configuration. Unknown keys and
// out-of-range values are hard errors that name the offending line, so a
// config file either describes exactly one reproducible experiment or does
// not parse.

#include <cstdint>
#include <istream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lipbo/acquisition.hpp"
#include "lipbo/harness.hpp"

namespace lipbo {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::vector<std::string> benchmarks;  // empty = all six
  std::vector<PolicyKind> policies;     // empty = subcommand default
  std::optional<int> budget;            // default 15 (d <= 3) or 35
  int n_runs = 200;
  std::uint64_t root_seed = 1;
  double explore_fraction = 0.2;
  std::optional<int> n_explore;         // overrides the fraction
  std::optional<double> lipschitz_l;    // default: per-benchmark constant
  std::optional<double> maximum_m;      // default 1 (normalized objectives)
  double beta = 1.5;
  std::optional<double> explore_width;  // default: squared box diameter
  std::optional<double> exploit_width;  // default: per-benchmark sweep value
  double jitter = 1e-10;
  std::optional<int> candidate_count;   // default 2000 * d
  std::optional<int> mc_count;          // default 2000
  std::string output;                   // default "<subcommand>.csv"
  int threads = 0;                      // 0 = number of available cores
  bool common_random_numbers = false;
  bool include_sweep_endpoint = false;
  BoundedEiForm ei_m_form = BoundedEiForm::exact;
  std::vector<double> width_grid = {0.005, 0.01, 0.02, 0.05, 0.1, 0.2,
                                    0.5,   1.0,  2.0,  5.0,  10.0, 20.0};
};

namespace config_detail {

inline std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

[[noreturn]] inline void fail(int line, const std::string& message) {
  throw ConfigError("config line " + std::to_string(line) + ": " + message);
}

inline double parse_number(const std::string& value, int line,
                           const std::string& key) {
  std::istringstream in(value);
  double v;
  if (!(in >> v) || !(in >> std::ws).eof())
    fail(line, "malformed value for '" + key + "': " + value);
  return v;
}

inline long parse_integer(const std::string& value, int line,
                          const std::string& key) {
  std::istringstream in(value);
  long v;
  if (!(in >> v) || !(in >> std::ws).eof())
    fail(line, "malformed integer for '" + key + "': " + value);
  return v;
}

inline bool parse_bool(const std::string& value, int line,
                       const std::string& key) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  fail(line, "malformed boolean for '" + key + "': " + value);
}

inline std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::string item;
  std::istringstream in(value);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

}  // namespace config_detail

inline ExperimentConfig parse_config(std::istream& in) {
  using namespace config_detail;
  ExperimentConfig cfg;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(line_no, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(line_no, "missing key");
    if (value.empty()) fail(line_no, "missing value for '" + key + "'");

    if (key == "benchmark") {
      for (const std::string& name : split_list(value)) {
        try {
          benchmark_by_name(name);
        } catch (const std::exception& e) {
          fail(line_no, e.what());
        }
        cfg.benchmarks.push_back(name);
      }
    } else if (key == "policy") {
      for (const std::string& name : split_list(value)) {
        try {
          cfg.policies.push_back(parse_policy_kind(name));
        } catch (const std::exception& e) {
          fail(line_no, e.what());
        }
      }
    } else if (key == "budget") {
      const long v = parse_integer(value, line_no, key);
      if (v < 1) fail(line_no, "budget must be >= 1");
      cfg.budget = static_cast<int>(v);
    } else if (key == "n_runs") {
      const long v = parse_integer(value, line_no, key);
      if (v < 1) fail(line_no, "n_runs must be >= 1");
      cfg.n_runs = static_cast<int>(v);
    } else if (key == "root_seed") {
      std::istringstream seed_in(value);
      std::uint64_t v;
      if (!(seed_in >> v) || !(seed_in >> std::ws).eof())
        fail(line_no, "malformed integer for 'root_seed': " + value);
      cfg.root_seed = v;
    } else if (key == "explore_fraction") {
      const double v = parse_number(value, line_no, key);
      if (v < 0.0 || v >= 1.0) fail(line_no, "explore_fraction must be in [0, 1)");
      cfg.explore_fraction = v;
    } else if (key == "n_explore") {
      const long v = parse_integer(value, line_no, key);
      if (v < 0) fail(line_no, "n_explore must be >= 0");
      cfg.n_explore = static_cast<int>(v);
    } else if (key == "lipschitz_l") {
      const double v = parse_number(value, line_no, key);
      if (!(v > 0.0)) fail(line_no, "lipschitz_l must be positive");
      cfg.lipschitz_l = v;
    } else if (key == "maximum_m") {
      cfg.maximum_m = parse_number(value, line_no, key);
    } else if (key == "beta") {
      const double v = parse_number(value, line_no, key);
      if (v < 0.0) fail(line_no, "beta must be >= 0");
      cfg.beta = v;
    } else if (key == "explore_width") {
      const double v = parse_number(value, line_no, key);
      if (!(v > 0.0)) fail(line_no, "explore_width must be positive");
      cfg.explore_width = v;
    } else if (key == "exploit_width") {
      const double v = parse_number(value, line_no, key);
      if (!(v > 0.0)) fail(line_no, "exploit_width must be positive");
      cfg.exploit_width = v;
    } else if (key == "jitter") {
      const double v = parse_number(value, line_no, key);
      if (v < 0.0) fail(line_no, "jitter must be >= 0");
      cfg.jitter = v;
    } else if (key == "candidate_count") {
      const long v = parse_integer(value, line_no, key);
      if (v < 1) fail(line_no, "candidate_count must be >= 1");
      cfg.candidate_count = static_cast<int>(v);
    } else if (key == "mc_count") {
      const long v = parse_integer(value, line_no, key);
      if (v < 1) fail(line_no, "mc_count must be >= 1");
      cfg.mc_count = static_cast<int>(v);
    } else if (key == "output") {
      cfg.output = value;
    } else if (key == "threads") {
      const long v = parse_integer(value, line_no, key);
      if (v < 0) fail(line_no, "threads must be >= 0");
      cfg.threads = static_cast<int>(v);
    } else if (key == "common_random_numbers") {
      cfg.common_random_numbers = parse_bool(value, line_no, key);
    } else if (key == "include_sweep_endpoint") {
      cfg.include_sweep_endpoint = parse_bool(value, line_no, key);
    } else if (key == "ei_m_form") {
      if (value == "exact") cfg.ei_m_form = BoundedEiForm::exact;
      else if (value == "omit_upper_pdf") cfg.ei_m_form = BoundedEiForm::omit_upper_pdf;
      else fail(line_no, "ei_m_form must be 'exact' or 'omit_upper_pdf'");
    } else if (key == "width_grid") {
      cfg.width_grid.clear();
      for (const std::string& item : split_list(value)) {
        const double v = parse_number(item, line_no, key);
        if (!(v > 0.0)) fail(line_no, "width_grid entries must be positive");
        cfg.width_grid.push_back(v);
      }
      if (cfg.width_grid.empty()) fail(line_no, "width_grid is empty");
    } else {
      fail(line_no, "unknown key '" + key + "'");
    }
  }
  return cfg;
}

inline ExperimentConfig parse_config(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

/// Concrete policy for one benchmark under this config: config overrides
/// where present, documented defaults otherwise.
inline PolicySpec make_policy(const ExperimentConfig& cfg,
                              const Benchmark& benchmark, PolicyKind kind) {
  const std::size_t d = benchmark.domain.dimension();
  const int budget = cfg.budget.value_or(d <= 3 ? 15 : 35);
  int n_explore;
  if (cfg.n_explore) {
    n_explore = *cfg.n_explore;
  } else if (kind == PolicyKind::ei || kind == PolicyKind::ei_m) {
    n_explore = budget > 1 ? 1 : 0;
  } else {
    n_explore = plan_budget(budget, cfg.explore_fraction).n_explore;
  }
  PolicySpec spec{
      kind,
      budget,
      n_explore,
      LipschitzSpec(cfg.maximum_m.value_or(1.0),
                    cfg.lipschitz_l.value_or(benchmark.lipschitz), cfg.beta),
      StrategyConfig(
          cfg.candidate_count.value_or(2000 * static_cast<int>(d)),
          cfg.mc_count.value_or(2000),
          KernelParams(
              cfg.explore_width.value_or(benchmark.domain.squared_diameter()),
              cfg.jitter),
          KernelParams(
              cfg.exploit_width.value_or(default_exploit_width(benchmark.name)),
              cfg.jitter)),
      cfg.ei_m_form};
  try {
    spec.validate();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("invalid policy configuration: ") + e.what());
  }
  return spec;
}

}  // namespace lipbo
