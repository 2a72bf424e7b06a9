#pragma once

// Experiment engine: policy definitions, single seeded runs, repeated-run
// regret summaries, exploration-count sweeps, and policy comparisons. Runs
// are embarrassingly parallel; each run owns its RNG stream and results are
// reduced in run order, so summaries do not depend on thread scheduling.

#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "lipbo/acquisition.hpp"
#include "lipbo/benchmarks.hpp"
#include "lipbo/geometry.hpp"
#include "lipbo/gp.hpp"
#include "lipbo/lipschitz.hpp"
#include "lipbo/random.hpp"

namespace lipbo {

enum class PolicyKind {
  ei,               // 1 random sample, then expected improvement
  ei_m,             // 1 random sample, then bounded expected improvement
  random_then_ei,   // k random samples, then expected improvement
  nbrs_then_ei,     // k explorative samples, then expected improvement
  random_then_nbis, // k random samples, then exploitation
  nbrs_then_nbis    // k explorative samples, then exploitation
};

inline const char* policy_name(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::ei: return "ei";
    case PolicyKind::ei_m: return "ei_m";
    case PolicyKind::random_then_ei: return "random_then_ei";
    case PolicyKind::nbrs_then_ei: return "nbrs_then_ei";
    case PolicyKind::random_then_nbis: return "random_then_nbis";
    case PolicyKind::nbrs_then_nbis: return "nbrs_then_nbis";
  }
  return "unknown";
}

inline PolicyKind parse_policy_kind(const std::string& name) {
  for (PolicyKind kind :
       {PolicyKind::ei, PolicyKind::ei_m, PolicyKind::random_then_ei,
        PolicyKind::nbrs_then_ei, PolicyKind::random_then_nbis,
        PolicyKind::nbrs_then_nbis})
    if (name == policy_name(kind)) return kind;
  throw std::invalid_argument("unknown policy: " + name);
}

inline bool uses_nbrs_exploration(PolicyKind kind) {
  return kind == PolicyKind::nbrs_then_ei || kind == PolicyKind::nbrs_then_nbis;
}

inline bool uses_nbis_selection(PolicyKind kind) {
  return kind == PolicyKind::random_then_nbis ||
         kind == PolicyKind::nbrs_then_nbis;
}

struct PolicySpec {
  PolicyKind kind;
  int budget;
  int n_explore;  // counts the mandatory random first sample
  LipschitzSpec lipschitz;
  StrategyConfig strategy;
  BoundedEiForm bounded_form = BoundedEiForm::exact;

  /// Identity used for seed derivation; includes the phase split because
  /// two sweeps points are distinct experiments.
  std::string id() const {
    return std::string(policy_name(kind)) + "/k=" + std::to_string(n_explore);
  }

  void validate() const {
    if (budget < 1) throw std::invalid_argument("budget must be >= 1");
    if (n_explore < 0 || n_explore > budget)
      throw std::invalid_argument("n_explore must lie in [0, budget]");
    if (!uses_nbis_selection(kind) && budget > 1 && n_explore < 1)
      throw std::invalid_argument(
          "acquisition-based policies need at least one explorative sample");
  }
};

struct RunTrace {
  ObservationSet observations;
  std::vector<double> best_so_far;
  double final_regret = std::numeric_limits<double>::quiet_NaN();
  int exhausted_steps = 0;  // strategy fell back because no candidate survived
};

struct RegretSummary {
  std::string benchmark;
  std::string policy;
  int n_runs = 0;
  double mean_regret = 0.0;
  double var_regret = 0.0;
  double stderr_regret = 0.0;
};

namespace harness_detail {

inline Point acquisition_step(const Benchmark& benchmark,
                              const PolicySpec& spec,
                              const ObservationSet& obs, RandomStream& rng) {
  const std::size_t d = benchmark.domain.dimension();
  const PosteriorModel model = fit(obs, spec.strategy.exploit_kernel);
  const std::vector<double> cand = uniform_box_sample_flat(
      benchmark.domain, rng, spec.strategy.candidate_count);
  const Eigen::Map<const Eigen::MatrixXd> queries(
      cand.data(), static_cast<Eigen::Index>(d),
      static_cast<Eigen::Index>(spec.strategy.candidate_count));
  Eigen::VectorXd mu, sigma;
  model.predict_batch(queries, mu, sigma);
  const double y_max = obs.y_max();
  const bool bounded = spec.kind == PolicyKind::ei_m;
  std::size_t best = 0;
  double best_score = -std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < mu.size(); ++j) {
    const double score =
        bounded ? bounded_expected_improvement(mu[j], sigma[j], y_max,
                                               spec.lipschitz.maximum,
                                               spec.bounded_form)
                : expected_improvement(mu[j], sigma[j], y_max);
    if (score > best_score) {
      best_score = score;
      best = static_cast<std::size_t>(j);
    }
  }
  return Point(cand.begin() + static_cast<std::ptrdiff_t>(best * d),
               cand.begin() + static_cast<std::ptrdiff_t>((best + 1) * d));
}

}  // namespace harness_detail

/// One budgeted optimization run. Step 1 is always a uniform random draw;
/// steps 2..n_explore use the policy's exploration rule and the remaining
/// steps its selection rule. Fully reproducible from the seed.
inline RunTrace run_once(const Benchmark& benchmark, const PolicySpec& spec,
                         std::uint64_t seed) {
  spec.validate();
  RandomStream rng(seed);
  RunTrace trace;
  double best = -std::numeric_limits<double>::infinity();
  for (int step = 1; step <= spec.budget; ++step) {
    Point x;
    if (step == 1) {
      x = uniform_box_sample(benchmark.domain, rng, 1).front();
    } else if (step <= spec.n_explore) {
      if (uses_nbrs_exploration(spec.kind)) {
        StrategyChoice choice = nbrs_next(benchmark.domain, trace.observations,
                                          spec.lipschitz, spec.strategy, rng);
        if (choice.region_exhausted) ++trace.exhausted_steps;
        x = std::move(choice.point);
      } else {
        x = uniform_box_sample(benchmark.domain, rng, 1).front();
      }
    } else if (uses_nbis_selection(spec.kind)) {
      StrategyChoice choice = nbis_next(benchmark.domain, trace.observations,
                                        spec.lipschitz, spec.strategy, rng);
      if (choice.region_exhausted) ++trace.exhausted_steps;
      x = std::move(choice.point);
    } else {
      x = harness_detail::acquisition_step(benchmark, spec, trace.observations,
                                           rng);
    }

    double y;
    try {
      y = benchmark.evaluate_normalized(x);
    } catch (const std::exception& e) {
      throw std::runtime_error("objective evaluation failed at step " +
                               std::to_string(step) + ": " + e.what());
    }
    trace.observations.add(std::move(x), y);
    best = std::max(best, y);
    trace.best_so_far.push_back(best);
  }
  trace.final_regret = 1.0 - best;
  return trace;
}

namespace harness_detail {

template <typename Work>
void parallel_for(int count, int threads, Work&& work) {
  if (threads <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) work(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto body = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= count) return;
      try {
        work(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const int n = std::min(threads, count);
  pool.reserve(static_cast<std::size_t>(n));
  for (int t = 0; t < n; ++t) pool.emplace_back(body);
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

inline RegretSummary summarize(const Benchmark& benchmark,
                               const PolicySpec& spec,
                               const std::vector<double>& regrets) {
  RegretSummary s;
  s.benchmark = benchmark.name;
  s.policy = policy_name(spec.kind);
  s.n_runs = static_cast<int>(regrets.size());
  double sum = 0.0;
  for (double r : regrets) sum += r;
  s.mean_regret = sum / static_cast<double>(s.n_runs);
  if (s.n_runs > 1) {
    double ss = 0.0;
    for (double r : regrets) {
      const double d = r - s.mean_regret;
      ss += d * d;
    }
    s.var_regret = ss / static_cast<double>(s.n_runs - 1);
  }
  s.stderr_regret = std::sqrt(s.var_regret / static_cast<double>(s.n_runs));
  return s;
}

}  // namespace harness_detail

/// Aggregate independent seeded runs. Seeds derive from the root seed, the
/// benchmark name, the policy identity and the run index; with
/// common_random_numbers the policy identity is dropped so matching run
/// indices share seeds across policies.
inline RegretSummary run_many(const Benchmark& benchmark, const PolicySpec& spec,
                              int n_runs, std::uint64_t root_seed,
                              int threads = 1,
                              bool common_random_numbers = false) {
  if (n_runs < 1) throw std::invalid_argument("n_runs must be >= 1");
  spec.validate();
  std::vector<double> regrets(static_cast<std::size_t>(n_runs));
  harness_detail::parallel_for(n_runs, threads, [&](int j) {
    const std::uint64_t seed =
        derive_seed(root_seed, benchmark.name,
                    common_random_numbers ? "" : spec.id(),
                    static_cast<std::uint64_t>(j));
    regrets[static_cast<std::size_t>(j)] =
        run_once(benchmark, spec, seed).final_regret;
  });
  return harness_detail::summarize(benchmark, spec, regrets);
}

/// Regret as a function of the exploration count k: for each k the policy
/// spends k samples exploring and budget - k selecting. The endpoint
/// k = budget (no selection samples at all) is included on request.
inline std::vector<std::pair<int, RegretSummary>> sweep_exploration(
    const Benchmark& benchmark, const PolicySpec& base, int budget, int n_runs,
    std::uint64_t root_seed, int threads = 1, bool include_endpoint = false) {
  if (budget < 2) throw std::invalid_argument("sweep needs budget >= 2");
  std::vector<std::pair<int, RegretSummary>> out;
  const int top = include_endpoint ? budget : budget - 1;
  for (int k = 1; k <= top; ++k) {
    PolicySpec spec = base;
    spec.budget = budget;
    spec.n_explore = k;
    out.emplace_back(k, run_many(benchmark, spec, n_runs, root_seed, threads));
  }
  return out;
}

/// Side-by-side summaries of several policies on one benchmark.
inline std::vector<RegretSummary> compare_policies(
    const Benchmark& benchmark, const std::vector<PolicySpec>& policies,
    int n_runs, std::uint64_t root_seed, int threads = 1,
    bool common_random_numbers = false) {
  if (policies.size() < 2)
    throw std::invalid_argument("comparison needs at least two policies");
  std::vector<RegretSummary> out;
  out.reserve(policies.size());
  for (const PolicySpec& spec : policies)
    out.push_back(run_many(benchmark, spec, n_runs, root_seed, threads,
                           common_random_numbers));
  return out;
}

/// Mean regret per exploitation kernel width; used to pick the width under
/// which a policy performs best.
inline std::vector<std::pair<double, RegretSummary>> sweep_kernel_width(
    const Benchmark& benchmark, const PolicySpec& base,
    const std::vector<double>& widths, int n_runs, std::uint64_t root_seed,
    int threads = 1) {
  if (widths.empty()) throw std::invalid_argument("width grid is empty");
  std::vector<std::pair<double, RegretSummary>> out;
  for (double w : widths) {
    PolicySpec spec = base;
    spec.strategy.exploit_kernel =
        KernelParams(w, base.strategy.exploit_kernel.jitter);
    out.emplace_back(w, run_many(benchmark, spec, n_runs, root_seed, threads));
  }
  return out;
}

/// Exploitation kernel widths found by sweep_kernel_width over the ei
/// policy at 200 runs; see the width-sweep CLI subcommand.
inline double default_exploit_width(const std::string& benchmark_name) {
  if (benchmark_name == "cosines") return 0.05;
  if (benchmark_name == "rosenbrock") return 0.1;
  if (benchmark_name == "hartman3") return 0.3;
  if (benchmark_name == "hartman6") return 0.8;
  if (benchmark_name == "shekel") return 1.5;
  if (benchmark_name == "michalewicz") return 1.0;
  return 1.0;
}

/// Policy with every field at its documented default for the benchmark:
/// budget 15 up to three dimensions and 35 above, a 20% exploration split
/// (one sample for the acquisition baselines), the benchmark's Lipschitz
/// constant with M = 1 on normalized values, 2000 * d candidates and 2000
/// Monte-Carlo points, exploration width = squared box diameter.
inline PolicySpec default_policy(const Benchmark& benchmark, PolicyKind kind) {
  const std::size_t d = benchmark.domain.dimension();
  const int budget = d <= 3 ? 15 : 35;
  int n_explore;
  if (kind == PolicyKind::ei || kind == PolicyKind::ei_m)
    n_explore = budget > 1 ? 1 : 0;
  else
    n_explore = plan_budget(budget, 0.2).n_explore;
  PolicySpec spec{
      kind,
      budget,
      n_explore,
      LipschitzSpec(1.0, benchmark.lipschitz, 1.5),
      StrategyConfig(2000 * static_cast<int>(d), 2000,
                     KernelParams(benchmark.domain.squared_diameter()),
                     KernelParams(default_exploit_width(benchmark.name)))};
  spec.validate();
  return spec;
}

}  // namespace lipbo
