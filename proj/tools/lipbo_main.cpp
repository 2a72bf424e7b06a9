// Experiment CLI: reads a key=value config file, runs one of the batch
// experiment subcommands and writes a CSV. See README.md for the config
// keys and the output schemas.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "lipbo/cli.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> runs;
  std::optional<std::string> out;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("config", args.config_path, "experiment config file")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--seed", args.seed, "override root_seed");
  cmd->add_option("--runs", args.runs, "override n_runs");
  cmd->add_option("--out", args.out, "override output path");
}

int dispatch(const CommonArgs& args, lipbo::Subcommand cmd) {
  std::ifstream in(args.config_path);
  if (!in) {
    std::cerr << "error: cannot open config file " << args.config_path << "\n";
    return 2;
  }
  lipbo::ExperimentConfig cfg;
  try {
    cfg = lipbo::parse_config(in);
  } catch (const lipbo::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  }
  if (args.seed) cfg.root_seed = *args.seed;
  if (args.runs) {
    if (*args.runs < 1) {
      std::cerr << "config error: --runs must be >= 1\n";
      return 1;
    }
    cfg.n_runs = *args.runs;
  }
  if (args.out) cfg.output = *args.out;
  return lipbo::run_command(cfg, cmd, std::cerr);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lipschitz-aware Bayesian optimization experiments"};
  app.require_subcommand(1);

  CommonArgs single_args, table2_args, fig1_args, fig3_args, width_args;
  CLI::App* single =
      app.add_subcommand("single", "summarize one policy configuration");
  add_common(single, single_args);
  CLI::App* table2 =
      app.add_subcommand("table2", "policy comparison across benchmarks");
  add_common(table2, table2_args);
  CLI::App* fig1 = app.add_subcommand(
      "fig1", "regret versus random-exploration count for the EI baseline");
  add_common(fig1, fig1_args);
  CLI::App* fig3 = app.add_subcommand(
      "fig3", "regret versus exploration count for the exploitation policies");
  add_common(fig3, fig3_args);
  CLI::App* width = app.add_subcommand(
      "width-sweep", "mean regret per exploitation kernel width");
  add_common(width, width_args);

  CLI11_PARSE(app, argc, argv);

  if (single->parsed()) return dispatch(single_args, lipbo::Subcommand::single);
  if (table2->parsed()) return dispatch(table2_args, lipbo::Subcommand::table2);
  if (fig1->parsed()) return dispatch(fig1_args, lipbo::Subcommand::fig1);
  if (fig3->parsed()) return dispatch(fig3_args, lipbo::Subcommand::fig3);
  if (width->parsed()) return dispatch(width_args, lipbo::Subcommand::width_sweep);
  return 1;
}
