#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "lipbo/harness.hpp"

using namespace lipbo;

namespace {

PolicySpec tiny_policy(const Benchmark& b, PolicyKind kind, int budget,
                       int n_explore) {
  PolicySpec spec = default_policy(b, kind);
  spec.budget = budget;
  spec.n_explore = n_explore;
  // keep unit runs quick; candidate quality does not matter here
  spec.strategy.candidate_count = 200;
  spec.strategy.mc_count = 200;
  spec.validate();
  return spec;
}

}  // namespace

TEST_CASE("policy names round-trip") {
  for (PolicyKind kind :
       {PolicyKind::ei, PolicyKind::ei_m, PolicyKind::random_then_ei,
        PolicyKind::nbrs_then_ei, PolicyKind::random_then_nbis,
        PolicyKind::nbrs_then_nbis})
    REQUIRE(parse_policy_kind(policy_name(kind)) == kind);
  REQUIRE_THROWS_AS(parse_policy_kind("expected_improvement"),
                    std::invalid_argument);
}

TEST_CASE("policy validation") {
  const Benchmark b = make_cosines();
  PolicySpec spec = default_policy(b, PolicyKind::ei);
  spec.n_explore = 0;
  REQUIRE_THROWS_AS(spec.validate(), std::invalid_argument);
  spec.n_explore = 16;
  REQUIRE_THROWS_AS(spec.validate(), std::invalid_argument);
  spec.n_explore = 1;
  spec.budget = 0;
  REQUIRE_THROWS_AS(spec.validate(), std::invalid_argument);

  PolicySpec nbis = default_policy(b, PolicyKind::random_then_nbis);
  nbis.n_explore = 0;  // exploitation from the second step on is fine
  REQUIRE_NOTHROW(nbis.validate());
}

TEST_CASE("a single-sample run is one uniform draw") {
  const Benchmark b = make_cosines();
  const PolicySpec spec = tiny_policy(b, PolicyKind::nbrs_then_nbis, 1, 0);
  const RunTrace trace = run_once(b, spec, 99);

  RandomStream rng(99);
  const Point expected = uniform_box_sample(b.domain, rng, 1).front();
  REQUIRE(trace.observations.size() == 1);
  REQUIRE(trace.observations.items().front().x == expected);
  REQUIRE(trace.final_regret ==
          Catch::Approx(1.0 - b.evaluate_normalized(expected)).margin(1e-15));
  REQUIRE(trace.best_so_far.size() == 1);
}

TEST_CASE("runs are reproducible from the seed") {
  const Benchmark b = make_cosines();
  for (PolicyKind kind : {PolicyKind::ei, PolicyKind::nbrs_then_nbis}) {
    const PolicySpec spec = tiny_policy(b, kind, 6, kind == PolicyKind::ei ? 1 : 2);
    const RunTrace a = run_once(b, spec, 1234);
    const RunTrace c = run_once(b, spec, 1234);
    REQUIRE(a.observations.size() == c.observations.size());
    for (std::size_t i = 0; i < a.observations.size(); ++i)
      REQUIRE(a.observations.items()[i].x == c.observations.items()[i].x);
  }
}

TEST_CASE("every policy spends the budget exactly") {
  const Benchmark b = make_rosenbrock();
  for (PolicyKind kind :
       {PolicyKind::ei, PolicyKind::ei_m, PolicyKind::random_then_ei,
        PolicyKind::nbrs_then_ei, PolicyKind::random_then_nbis,
        PolicyKind::nbrs_then_nbis}) {
    const PolicySpec spec = tiny_policy(b, kind, 7, 2);
    const RunTrace trace = run_once(b, spec, 5);
    REQUIRE(trace.observations.size() == 7);
    REQUIRE(trace.best_so_far.size() == 7);
  }
}

TEST_CASE("budget is spent even when the region is exhausted") {
  // an L this small eliminates everything after the first sample
  Benchmark b = make_cosines();
  PolicySpec spec = tiny_policy(b, PolicyKind::nbrs_then_nbis, 5, 3);
  spec.lipschitz = LipschitzSpec(1.0, 0.05, 1.5);
  const RunTrace trace = run_once(b, spec, 7);
  REQUIRE(trace.observations.size() == 5);
  REQUIRE(trace.exhausted_steps > 0);
}

TEST_CASE("best-so-far never worsens") {
  const Benchmark b = make_hartman3();
  const PolicySpec spec = tiny_policy(b, PolicyKind::ei, 8, 1);
  const RunTrace trace = run_once(b, spec, 11);
  for (std::size_t i = 1; i < trace.best_so_far.size(); ++i)
    REQUIRE(trace.best_so_far[i] >= trace.best_so_far[i - 1]);
  REQUIRE(trace.final_regret >= 0.0);
  REQUIRE(trace.final_regret == Catch::Approx(1.0 - trace.best_so_far.back()));
}

TEST_CASE("summary of a single run is that run") {
  const Benchmark b = make_cosines();
  const PolicySpec spec = tiny_policy(b, PolicyKind::random_then_nbis, 4, 1);
  const RegretSummary s = run_many(b, spec, 1, 321);
  const RunTrace trace =
      run_once(b, spec, derive_seed(321, b.name, spec.id(), 0));
  REQUIRE(s.n_runs == 1);
  REQUIRE(s.mean_regret == trace.final_regret);
  REQUIRE(s.var_regret == 0.0);
  REQUIRE(s.stderr_regret == 0.0);
}

TEST_CASE("summaries aggregate per-run regrets in run order") {
  const Benchmark b = make_cosines();
  const PolicySpec spec = tiny_policy(b, PolicyKind::random_then_nbis, 4, 1);
  const int n = 6;
  const RegretSummary s = run_many(b, spec, n, 77);
  double mean = 0.0;
  std::vector<double> regrets;
  for (int j = 0; j < n; ++j) {
    regrets.push_back(
        run_once(b, spec, derive_seed(77, b.name, spec.id(), j)).final_regret);
    mean += regrets.back();
  }
  mean /= n;
  REQUIRE(s.mean_regret == Catch::Approx(mean).margin(1e-15));
  double var = 0.0;
  for (double r : regrets) var += (r - mean) * (r - mean);
  var /= (n - 1);
  REQUIRE(s.var_regret == Catch::Approx(var).margin(1e-15));
  REQUIRE(s.stderr_regret == Catch::Approx(std::sqrt(var / n)).margin(1e-15));
}

TEST_CASE("thread count does not change summaries") {
  const Benchmark b = make_cosines();
  const PolicySpec spec = tiny_policy(b, PolicyKind::nbrs_then_nbis, 5, 2);
  const RegretSummary serial = run_many(b, spec, 8, 2025, 1);
  const RegretSummary parallel = run_many(b, spec, 8, 2025, 4);
  REQUIRE(serial.mean_regret == parallel.mean_regret);
  REQUIRE(serial.var_regret == parallel.var_regret);
}

TEST_CASE("exploration sweeps cover every split of the budget") {
  const Benchmark b = make_cosines();
  const PolicySpec base = tiny_policy(b, PolicyKind::random_then_ei, 6, 1);
  const auto sweep = sweep_exploration(b, base, 6, 2, 12);
  REQUIRE(sweep.size() == 5);
  for (int k = 1; k <= 5; ++k) REQUIRE(sweep[k - 1].first == k);

  const auto with_end = sweep_exploration(b, base, 6, 2, 12, 1, true);
  REQUIRE(with_end.size() == 6);
  REQUIRE(with_end.back().first == 6);
}

TEST_CASE("policy comparison under common random numbers") {
  const Benchmark b = make_cosines();
  const PolicySpec a = tiny_policy(b, PolicyKind::random_then_nbis, 4, 1);
  const auto table = compare_policies(b, {a, a}, 5, 99, 1, true);
  REQUIRE(table.size() == 2);
  REQUIRE(table[0].mean_regret == table[1].mean_regret);
  REQUIRE(table[0].var_regret == table[1].var_regret);
  REQUIRE_THROWS_AS(compare_policies(b, {a}, 5, 99, 1, true),
                    std::invalid_argument);
}

TEST_CASE("kernel width sweeps scan the grid in order") {
  const Benchmark b = make_cosines();
  const PolicySpec base = tiny_policy(b, PolicyKind::ei, 4, 1);
  const std::vector<double> widths{0.05, 0.2, 1.0};
  const auto sweep = sweep_kernel_width(b, base, widths, 3, 5);
  REQUIRE(sweep.size() == 3);
  for (std::size_t i = 0; i < widths.size(); ++i)
    REQUIRE(sweep[i].first == widths[i]);
}

TEST_CASE("default policies wire the documented values") {
  const Benchmark cosines = make_cosines();
  const PolicySpec ei = default_policy(cosines, PolicyKind::ei);
  REQUIRE(ei.budget == 15);
  REQUIRE(ei.n_explore == 1);
  REQUIRE(ei.lipschitz.maximum == 1.0);
  REQUIRE(ei.lipschitz.lipschitz == 6.0);
  REQUIRE(ei.lipschitz.beta == 1.5);
  REQUIRE(ei.strategy.candidate_count == 4000);
  REQUIRE(ei.strategy.mc_count == 2000);
  REQUIRE(ei.strategy.explore_kernel.width == Catch::Approx(2.0));

  const PolicySpec two_phase =
      default_policy(make_shekel(), PolicyKind::nbrs_then_nbis);
  REQUIRE(two_phase.budget == 35);
  REQUIRE(two_phase.n_explore == 7);
  REQUIRE(two_phase.strategy.candidate_count == 8000);
  REQUIRE(two_phase.strategy.explore_kernel.width == Catch::Approx(36.0));
}

TEST_CASE("a quick two-phase run beats random sampling on rosenbrock") {
  // small-scale sanity check of the full pipeline; the acceptance suite
  // runs the experiment at its real size
  const Benchmark b = make_rosenbrock();
  PolicySpec spec = default_policy(b, PolicyKind::nbrs_then_nbis);
  spec.strategy.candidate_count = 500;
  spec.strategy.mc_count = 500;
  const RegretSummary s = run_many(b, spec, 20, 7);
  REQUIRE(s.mean_regret < 0.2);
}
