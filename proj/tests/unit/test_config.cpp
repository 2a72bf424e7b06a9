#include <catch2/catch_amalgamated.hpp>

#include <string>

#include "lipbo/config.hpp"

using namespace lipbo;

TEST_CASE("a one-line config resolves to the documented defaults") {
  const ExperimentConfig cfg = parse_config(std::string("benchmark = cosines\n"));
  REQUIRE(cfg.benchmarks == std::vector<std::string>{"cosines"});
  REQUIRE(cfg.n_runs == 200);
  REQUIRE(cfg.explore_fraction == 0.2);
  REQUIRE(cfg.beta == 1.5);

  const PolicySpec spec =
      make_policy(cfg, benchmark_by_name("cosines"), PolicyKind::nbrs_then_nbis);
  REQUIRE(spec.budget == 15);
  REQUIRE(spec.lipschitz.lipschitz == 6.0);
  REQUIRE(spec.lipschitz.maximum == 1.0);
  REQUIRE(spec.n_explore == 3);
}

TEST_CASE("dimension drives the default budget") {
  const ExperimentConfig cfg = parse_config(std::string("benchmark = shekel\n"));
  const PolicySpec spec =
      make_policy(cfg, benchmark_by_name("shekel"), PolicyKind::ei);
  REQUIRE(spec.budget == 35);
  REQUIRE(spec.n_explore == 1);
  REQUIRE(spec.strategy.candidate_count == 8000);
}

TEST_CASE("comments and blank lines are ignored") {
  const ExperimentConfig cfg = parse_config(std::string(
      "# a comment\n"
      "\n"
      "benchmark = rosenbrock  # trailing comment\n"
      "   \n"
      "n_runs = 50\n"));
  REQUIRE(cfg.benchmarks == std::vector<std::string>{"rosenbrock"});
  REQUIRE(cfg.n_runs == 50);
}

TEST_CASE("range violations name the offending line") {
  try {
    parse_config(std::string("benchmark = cosines\nbudget = 0\n"));
    FAIL("expected a config error");
  } catch (const ConfigError& e) {
    const std::string what = e.what();
    REQUIRE(what.find("budget") != std::string::npos);
    REQUIRE(what.find("line 2") != std::string::npos);
  }
}

TEST_CASE("unknown keys are rejected") {
  REQUIRE_THROWS_AS(parse_config(std::string("bandwidth = 3\n")), ConfigError);
  REQUIRE_THROWS_AS(parse_config(std::string("benchmark = branin\n")), ConfigError);
  REQUIRE_THROWS_AS(parse_config(std::string("policy = ucb\n")), ConfigError);
}

TEST_CASE("malformed values are rejected") {
  REQUIRE_THROWS_AS(parse_config(std::string("budget = twelve\n")), ConfigError);
  REQUIRE_THROWS_AS(parse_config(std::string("budget\n")), ConfigError);
  REQUIRE_THROWS_AS(parse_config(std::string("beta = -1\n")), ConfigError);
  REQUIRE_THROWS_AS(parse_config(std::string("explore_fraction = 1.0\n")), ConfigError);
  REQUIRE_THROWS_AS(parse_config(std::string("common_random_numbers = yes\n")), ConfigError);
  REQUIRE_THROWS_AS(parse_config(std::string("ei_m_form = fancy\n")), ConfigError);
  REQUIRE_THROWS_AS(parse_config(std::string("threads = -1\n")), ConfigError);
}

TEST_CASE("lists and overrides parse") {
  const ExperimentConfig cfg = parse_config(std::string(
      "benchmark = cosines, shekel\n"
      "policy = ei, nbrs_then_nbis\n"
      "budget = 9\n"
      "n_explore = 4\n"
      "lipschitz_l = 5.5\n"
      "maximum_m = 0.98\n"
      "exploit_width = 0.25\n"
      "explore_width = 7\n"
      "candidate_count = 111\n"
      "mc_count = 222\n"
      "threads = 2\n"
      "root_seed = 424242\n"
      "common_random_numbers = true\n"
      "include_sweep_endpoint = true\n"
      "ei_m_form = omit_upper_pdf\n"
      "width_grid = 0.1, 0.2\n"
      "output = somewhere.csv\n"));
  REQUIRE(cfg.benchmarks == std::vector<std::string>{"cosines", "shekel"});
  REQUIRE(cfg.policies ==
          std::vector<PolicyKind>{PolicyKind::ei, PolicyKind::nbrs_then_nbis});
  REQUIRE(cfg.root_seed == 424242);
  REQUIRE(cfg.common_random_numbers);
  REQUIRE(cfg.include_sweep_endpoint);
  REQUIRE(cfg.width_grid == std::vector<double>{0.1, 0.2});

  const PolicySpec spec =
      make_policy(cfg, benchmark_by_name("cosines"), PolicyKind::ei);
  REQUIRE(spec.budget == 9);
  REQUIRE(spec.n_explore == 4);
  REQUIRE(spec.lipschitz.lipschitz == 5.5);
  REQUIRE(spec.lipschitz.maximum == 0.98);
  REQUIRE(spec.strategy.exploit_kernel.width == 0.25);
  REQUIRE(spec.strategy.explore_kernel.width == 7.0);
  REQUIRE(spec.strategy.candidate_count == 111);
  REQUIRE(spec.strategy.mc_count == 222);
  REQUIRE(spec.bounded_form == BoundedEiForm::omit_upper_pdf);
}

TEST_CASE("inconsistent policy settings surface as config errors") {
  const ExperimentConfig cfg = parse_config(std::string(
      "benchmark = cosines\nbudget = 5\nn_explore = 9\n"));
  REQUIRE_THROWS_AS(
      make_policy(cfg, benchmark_by_name("cosines"), PolicyKind::ei),
      ConfigError);
}
