#pragma once

// Subcommand dispatch and CSV emission. Every number written here is a
// field of a RegretSummary (or the sweep coordinate that produced it);
// there is no post-processing at this layer, so rerunning a subcommand
// with the same config reproduces the output byte for byte.

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "lipbo/config.hpp"
#include "lipbo/harness.hpp"

namespace lipbo {

enum class Subcommand { single, table2, fig1, fig3, width_sweep };

inline const char* subcommand_name(Subcommand cmd) {
  switch (cmd) {
    case Subcommand::single: return "single";
    case Subcommand::table2: return "table2";
    case Subcommand::fig1: return "fig1";
    case Subcommand::fig3: return "fig3";
    case Subcommand::width_sweep: return "width-sweep";
  }
  return "unknown";
}

namespace cli_detail {

inline std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

inline std::vector<std::string> resolve_benchmarks(const ExperimentConfig& cfg) {
  if (!cfg.benchmarks.empty()) return cfg.benchmarks;
  std::vector<std::string> names;
  for (const Benchmark& b : benchmark_suite()) names.push_back(b.name);
  return names;
}

inline std::vector<PolicyKind> resolve_policies(const ExperimentConfig& cfg,
                                                Subcommand cmd) {
  if (!cfg.policies.empty()) return cfg.policies;
  switch (cmd) {
    case Subcommand::single: return {PolicyKind::nbrs_then_nbis};
    case Subcommand::table2:
      return {PolicyKind::ei, PolicyKind::ei_m, PolicyKind::nbrs_then_ei,
              PolicyKind::nbrs_then_nbis};
    case Subcommand::fig1: return {PolicyKind::random_then_ei};
    case Subcommand::fig3:
      return {PolicyKind::nbrs_then_nbis, PolicyKind::random_then_nbis};
    case Subcommand::width_sweep: return {PolicyKind::ei};
  }
  return {};
}

inline void append_summary_row(std::ostringstream& out, const RegretSummary& s) {
  out << s.benchmark << ',' << s.policy << ',' << s.n_runs << ','
      << format_number(s.mean_regret) << ',' << format_number(s.var_regret)
      << ',' << format_number(s.stderr_regret) << '\n';
}

}  // namespace cli_detail

/// Run one subcommand and write its CSV. Returns the process exit status:
/// 0 success, 1 configuration error, 2 runtime/I-O error.
inline int run_command(const ExperimentConfig& cfg, Subcommand cmd,
                       std::ostream& log) {
  try {
    const int threads =
        cfg.threads > 0
            ? cfg.threads
            : std::max(1u, std::thread::hardware_concurrency());
    const std::vector<std::string> benchmarks =
        cli_detail::resolve_benchmarks(cfg);
    const std::vector<PolicyKind> policies =
        cli_detail::resolve_policies(cfg, cmd);

    std::ostringstream csv;
    switch (cmd) {
      case Subcommand::single:
      case Subcommand::table2: {
        csv << "benchmark,policy,n_runs,mean_regret,var_regret,stderr\n";
        for (const std::string& name : benchmarks) {
          const Benchmark& b = benchmark_by_name(name);
          for (PolicyKind kind : policies) {
            const PolicySpec spec = make_policy(cfg, b, kind);
            const RegretSummary s =
                run_many(b, spec, cfg.n_runs, cfg.root_seed, threads,
                         cfg.common_random_numbers);
            cli_detail::append_summary_row(csv, s);
          }
        }
        break;
      }
      case Subcommand::fig1:
      case Subcommand::fig3: {
        csv << "benchmark,policy,n_explore,mean_regret,var_regret\n";
        for (const std::string& name : benchmarks) {
          const Benchmark& b = benchmark_by_name(name);
          for (PolicyKind kind : policies) {
            const PolicySpec base = make_policy(cfg, b, kind);
            const auto sweep = sweep_exploration(
                b, base, base.budget, cfg.n_runs, cfg.root_seed, threads,
                cfg.include_sweep_endpoint);
            for (const auto& [k, s] : sweep)
              csv << s.benchmark << ',' << s.policy << ',' << k << ','
                  << cli_detail::format_number(s.mean_regret) << ','
                  << cli_detail::format_number(s.var_regret) << '\n';
          }
        }
        break;
      }
      case Subcommand::width_sweep: {
        csv << "benchmark,policy,kernel_width,mean_regret,var_regret,stderr\n";
        for (const std::string& name : benchmarks) {
          const Benchmark& b = benchmark_by_name(name);
          for (PolicyKind kind : policies) {
            const PolicySpec base = make_policy(cfg, b, kind);
            const auto sweep =
                sweep_kernel_width(b, base, cfg.width_grid, cfg.n_runs,
                                   cfg.root_seed, threads);
            for (const auto& [w, s] : sweep)
              csv << s.benchmark << ',' << s.policy << ','
                  << cli_detail::format_number(w) << ','
                  << cli_detail::format_number(s.mean_regret) << ','
                  << cli_detail::format_number(s.var_regret) << ','
                  << cli_detail::format_number(s.stderr_regret) << '\n';
          }
        }
        break;
      }
    }

    const std::string path = cfg.output.empty()
                                 ? std::string(subcommand_name(cmd)) + ".csv"
                                 : cfg.output;
    std::ofstream out(path, std::ios::binary);
    out << csv.str();
    out.flush();
    if (!out) {
      log << "error: failed to write " << path << "\n";
      return 2;
    }
    log << subcommand_name(cmd) << ": wrote " << path << "\n";
    return 0;
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace lipbo
