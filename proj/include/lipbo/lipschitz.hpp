#pragma once

// Lipschitz-driven sampling strategies. A sample with value y rules out a
// ball of radius (M - y)/L around itself; the exploration rule picks the
// point whose confidence-lower-bound ball adds the most new volume to the
// explored region, and the exploitation rule picks the point minimizing the
// confidence upper bound on its distance to the maximizer.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

#include "lipbo/geometry.hpp"
#include "lipbo/gp.hpp"
#include "lipbo/random.hpp"

namespace lipbo {

struct LipschitzSpec {
  double maximum;    // known (or assumed) maximum of the objective
  double lipschitz;  // Lipschitz constant, > 0
  double beta;       // confidence multiplier on sigma

  LipschitzSpec(double maximum_, double lipschitz_, double beta_ = 1.5)
      : maximum(maximum_), lipschitz(lipschitz_), beta(beta_) {
    if (!(lipschitz > 0.0))
      throw std::invalid_argument("Lipschitz constant must be positive");
    if (beta < 0.0) throw std::invalid_argument("beta must be >= 0");
  }
};

struct StrategyConfig {
  int candidate_count;        // points drawn in the unexplored region
  int mc_count;               // Monte-Carlo points per candidate ball
  KernelParams explore_kernel;
  KernelParams exploit_kernel;

  StrategyConfig(int candidate_count_, int mc_count_, KernelParams explore,
                 KernelParams exploit)
      : candidate_count(candidate_count_),
        mc_count(mc_count_),
        explore_kernel(explore),
        exploit_kernel(exploit) {
    if (candidate_count < 1)
      throw std::invalid_argument("candidate_count must be >= 1");
    if (mc_count < 1) throw std::invalid_argument("mc_count must be >= 1");
  }
};

struct PhasePlan {
  int n_explore;
  int n_exploit;
};

/// Split a budget into exploration and exploitation steps. A nonzero
/// fraction always yields at least one exploration step and leaves at least
/// one exploitation step (unless the budget itself is a single sample).
inline PhasePlan plan_budget(int budget, double explore_fraction) {
  if (budget < 1) throw std::invalid_argument("budget must be >= 1");
  if (explore_fraction < 0.0 || explore_fraction >= 1.0)
    throw std::invalid_argument("explore_fraction must be in [0, 1)");
  if (explore_fraction == 0.0 || budget == 1) return PhasePlan{0, budget};
  long k = std::lround(explore_fraction * budget);
  k = std::clamp(k, 1l, static_cast<long>(budget - 1));
  return PhasePlan{static_cast<int>(k), budget - static_cast<int>(k)};
}

inline double radius_lower_bound(double mu, double sigma,
                                 const LipschitzSpec& spec) {
  return (std::abs(spec.maximum - mu) - spec.beta * sigma) / spec.lipschitz;
}

inline double radius_upper_bound(double mu, double sigma,
                                 const LipschitzSpec& spec) {
  return (std::abs(spec.maximum - mu) + spec.beta * sigma) / spec.lipschitz;
}

/// Hoeffding tail bound exp(-2 beta^2) on either radius bound being wrong.
inline double confidence_level(double beta) {
  if (beta < 0.0) throw std::invalid_argument("beta must be >= 0");
  return std::exp(-2.0 * beta * beta);
}

inline double unit_ball_volume(std::size_t dimension) {
  const double half_d = static_cast<double>(dimension) / 2.0;
  return std::pow(M_PI, half_d) / std::tgamma(half_d + 1.0);
}

/// Elimination region induced by the observations: one sphere per sample
/// with the realized radius (M - y_i)/L.
inline ExclusionRegion build_exclusion_region(const BoxDomain& domain,
                                              const ObservationSet& obs,
                                              const LipschitzSpec& spec) {
  ExclusionRegion region(domain);
  for (const Observation& o : obs.items())
    region.add_sphere(
        Sphere{o.x, realized_radius(spec.maximum, spec.lipschitz, o.y)});
  return region;
}

/// Monte-Carlo estimate of the volume a ball adds to the explored region:
/// (unexplored fraction) * V_d(1) * r^d. The exact unit-ball volume factor
/// makes the result a true volume; it scales every candidate identically,
/// so argmax decisions are unaffected by it.
inline double estimate_new_volume(const Point& center, double radius,
                                  const ExclusionRegion& region, int mc_count,
                                  RandomStream& rng) {
  if (!(radius > 0.0)) return 0.0;
  const std::size_t d = center.size();
  const std::vector<double> unit = unit_ball_sample_flat(d, rng, mc_count);
  Point p(d);
  long hits = 0;
  for (int i = 0; i < mc_count; ++i) {
    for (std::size_t j = 0; j < d; ++j)
      p[j] = center[j] + radius * unit[static_cast<std::size_t>(i) * d + j];
    if (is_unexplored(region, p)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(mc_count) *
         unit_ball_volume(d) * std::pow(radius, static_cast<double>(d));
}

/// Newly-explored volume g(x) for a candidate x: confidence-lower-bound
/// radius from the posterior, zero when that radius is non-positive.
inline double explored_volume_gain(const Point& x, const ExclusionRegion& region,
                                   const PosteriorModel& model,
                                   const LipschitzSpec& spec,
                                   const StrategyConfig& cfg, RandomStream& rng) {
  if (!region.domain().contains(x))
    throw std::invalid_argument("candidate lies outside the domain");
  const Prediction pred = model.predict(x);
  const double radius = radius_lower_bound(pred.mu, pred.sigma, spec);
  if (!(radius > 0.0)) return 0.0;
  return estimate_new_volume(x, radius, region, cfg.mc_count, rng);
}

struct StrategyChoice {
  Point point;
  bool region_exhausted = false;  // no drawn candidate was unexplored
};

namespace detail {

// Flattened sphere data for the candidate-filter and volume loops.
struct FlatSpheres {
  std::vector<double> centers;  // s * d, point-major
  std::vector<double> radius;
  std::vector<double> radius_sq;  // 0 for degenerate spheres
  std::size_t count = 0;
};

inline FlatSpheres flatten_spheres(const ExclusionRegion& region) {
  FlatSpheres out;
  const std::size_t d = region.domain().dimension();
  out.count = region.spheres().size();
  out.centers.resize(out.count * d);
  out.radius.resize(out.count);
  out.radius_sq.resize(out.count);
  for (std::size_t s = 0; s < out.count; ++s) {
    const Sphere& sp = region.spheres()[s];
    std::copy(sp.center.begin(), sp.center.end(), out.centers.begin() + s * d);
    out.radius[s] = sp.radius;
    out.radius_sq[s] = sp.radius > 0.0 ? sp.radius * sp.radius : 0.0;
  }
  return out;
}

// Mirrors is_unexplored over flat storage: inside the closed box, outside
// every sphere (strict interior; degenerate spheres exclude their center).
inline bool unexplored_flat(const double* p, std::size_t d, const BoxDomain& box,
                            const FlatSpheres& sph) {
  for (std::size_t j = 0; j < d; ++j)
    if (p[j] < box.lower()[j] || p[j] > box.upper()[j]) return false;
  for (std::size_t s = 0; s < sph.count; ++s) {
    const double* c = sph.centers.data() + s * d;
    double dist_sq = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      const double diff = p[j] - c[j];
      dist_sq += diff * diff;
    }
    if (sph.radius[s] > 0.0) {
      if (dist_sq < sph.radius_sq[s]) return false;
    } else if (dist_sq == 0.0) {
      return false;
    }
  }
  return true;
}

inline Point point_at(const std::vector<double>& flat, std::size_t index,
                      std::size_t d) {
  return Point(flat.begin() + static_cast<std::ptrdiff_t>(index * d),
               flat.begin() + static_cast<std::ptrdiff_t>((index + 1) * d));
}

// Candidate farthest from its nearest observation; used when every drawn
// candidate is already excluded and the phase must still produce a sample.
inline Point max_min_distance_fallback(const std::vector<double>& candidates,
                                       std::size_t count, std::size_t d,
                                       const ObservationSet& obs) {
  std::size_t best = 0;
  double best_min = -1.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double* p = candidates.data() + i * d;
    double min_sq = std::numeric_limits<double>::infinity();
    for (const Observation& o : obs.items()) {
      double dist_sq = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        const double diff = p[j] - o.x[j];
        dist_sq += diff * diff;
      }
      min_sq = std::min(min_sq, dist_sq);
    }
    if (min_sq > best_min) {
      best_min = min_sq;
      best = i;
    }
  }
  return point_at(candidates, best, d);
}

inline Eigen::MatrixXd gather_columns(const std::vector<double>& flat,
                                      const std::vector<std::size_t>& indices,
                                      std::size_t d) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(d),
                    static_cast<Eigen::Index>(indices.size()));
  for (std::size_t i = 0; i < indices.size(); ++i)
    for (std::size_t j = 0; j < d; ++j)
      m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) =
          flat[indices[i] * d + j];
  return m;
}

}  // namespace detail

/// Next exploration sample: the unexplored candidate whose confidence ball
/// adds the most new volume. Candidates are drawn uniformly in the box and
/// rejected if already explored; all surviving candidates share one set of
/// unit-ball Monte-Carlo offsets, which keeps their volume estimates
/// directly comparable and the argmax stable.
inline StrategyChoice nbrs_next(const BoxDomain& domain,
                                const ObservationSet& obs,
                                const LipschitzSpec& spec,
                                const StrategyConfig& cfg, RandomStream& rng) {
  if (obs.empty())
    throw std::invalid_argument("exploration requires at least one observation");
  const std::size_t d = domain.dimension();
  const ExclusionRegion region = build_exclusion_region(domain, obs, spec);
  const detail::FlatSpheres sph = detail::flatten_spheres(region);
  const PosteriorModel model = fit(obs, cfg.explore_kernel);

  const std::vector<double> cand =
      uniform_box_sample_flat(domain, rng, cfg.candidate_count);
  std::vector<std::size_t> survivors;
  survivors.reserve(static_cast<std::size_t>(cfg.candidate_count));
  for (std::size_t i = 0; i < static_cast<std::size_t>(cfg.candidate_count); ++i)
    if (detail::unexplored_flat(cand.data() + i * d, d, domain, sph))
      survivors.push_back(i);

  if (survivors.empty())
    return StrategyChoice{
        detail::max_min_distance_fallback(
            cand, static_cast<std::size_t>(cfg.candidate_count), d, obs),
        true};

  const std::vector<double> unit = unit_ball_sample_flat(d, rng, cfg.mc_count);

  Eigen::VectorXd mu, sigma;
  model.predict_batch(detail::gather_columns(cand, survivors, d), mu, sigma);
  std::vector<double> radius(survivors.size());
  for (std::size_t i = 0; i < survivors.size(); ++i)
    radius[i] = radius_lower_bound(mu[static_cast<Eigen::Index>(i)],
                                   sigma[static_cast<Eigen::Index>(i)], spec);

  // Evaluate in decreasing-radius order. V_d(1) * r^d bounds a candidate's
  // gain from above, so once the bound drops below the best gain seen no
  // later candidate can win and the scan stops. Shortcut candidates whose
  // ball provably lies inside the box and misses every sphere (gain equals
  // the bound exactly) or sits inside a single sphere (gain is zero).
  std::vector<std::size_t> order(survivors.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (radius[a] != radius[b]) return radius[a] > radius[b];
    return survivors[a] < survivors[b];
  });

  const double vol_unit = unit_ball_volume(d);
  const double inv_n = 1.0 / static_cast<double>(cfg.mc_count);
  double best_gain = -std::numeric_limits<double>::infinity();
  std::size_t best_orig = 0;
  std::vector<std::size_t> active;
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    const std::size_t k = order[rank];
    const std::size_t orig = survivors[k];
    const double r = radius[k];
    const double bound =
        r > 0.0 ? vol_unit * std::pow(r, static_cast<double>(d)) : 0.0;
    if (bound < best_gain) break;

    double gain = 0.0;
    if (r > 0.0) {
      const double* x = cand.data() + orig * d;
      bool ball_in_box = true;
      for (std::size_t j = 0; j < d && ball_in_box; ++j)
        ball_in_box = x[j] - r >= domain.lower()[j] && x[j] + r <= domain.upper()[j];

      active.clear();
      bool covered = false;
      for (std::size_t s = 0; s < sph.count && !covered; ++s) {
        const double* c = sph.centers.data() + s * d;
        double dist_sq = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
          const double diff = x[j] - c[j];
          dist_sq += diff * diff;
        }
        const double dist = std::sqrt(dist_sq);
        if (sph.radius[s] > 0.0) {
          if (dist + r < sph.radius[s]) covered = true;
          else if (dist < sph.radius[s] + r) active.push_back(s);
        } else if (dist <= r) {
          active.push_back(s);
        }
      }

      if (covered) {
        gain = 0.0;
      } else if (active.empty() && ball_in_box) {
        gain = bound;
      } else {
        long hits = 0;
        std::vector<double> p(d);
        for (int m = 0; m < cfg.mc_count; ++m) {
          const double* u = unit.data() + static_cast<std::size_t>(m) * d;
          bool ok = true;
          for (std::size_t j = 0; j < d; ++j) {
            p[j] = x[j] + r * u[j];
            if (p[j] < domain.lower()[j] || p[j] > domain.upper()[j]) ok = false;
          }
          for (std::size_t a = 0; a < active.size() && ok; ++a) {
            const std::size_t s = active[a];
            const double* c = sph.centers.data() + s * d;
            double dist_sq = 0.0;
            for (std::size_t j = 0; j < d; ++j) {
              const double diff = p[j] - c[j];
              dist_sq += diff * diff;
            }
            if (sph.radius[s] > 0.0 ? dist_sq < sph.radius_sq[s] : dist_sq == 0.0)
              ok = false;
          }
          if (ok) ++hits;
        }
        gain = static_cast<double>(hits) * inv_n * bound;
      }
    }

    if (gain > best_gain || (gain == best_gain && orig < best_orig)) {
      best_gain = gain;
      best_orig = orig;
    }
  }

  return StrategyChoice{detail::point_at(cand, best_orig, d), false};
}

/// Next exploitation sample: the unexplored candidate minimizing the upper
/// confidence bound h(x) = (|M - mu| + beta * sigma)/L on the distance to
/// the maximizer. Minimizing the ball volume is the same as minimizing h,
/// since volume is monotone in the radius.
inline StrategyChoice nbis_next(const BoxDomain& domain,
                                const ObservationSet& obs,
                                const LipschitzSpec& spec,
                                const StrategyConfig& cfg, RandomStream& rng) {
  if (obs.empty())
    throw std::invalid_argument("exploitation requires at least one observation");
  const std::size_t d = domain.dimension();
  const ExclusionRegion region = build_exclusion_region(domain, obs, spec);
  const detail::FlatSpheres sph = detail::flatten_spheres(region);
  const PosteriorModel model = fit(obs, cfg.exploit_kernel);

  const std::vector<double> cand =
      uniform_box_sample_flat(domain, rng, cfg.candidate_count);
  std::vector<std::size_t> survivors;
  survivors.reserve(static_cast<std::size_t>(cfg.candidate_count));
  for (std::size_t i = 0; i < static_cast<std::size_t>(cfg.candidate_count); ++i)
    if (detail::unexplored_flat(cand.data() + i * d, d, domain, sph))
      survivors.push_back(i);

  if (survivors.empty())
    return StrategyChoice{
        detail::max_min_distance_fallback(
            cand, static_cast<std::size_t>(cfg.candidate_count), d, obs),
        true};

  Eigen::VectorXd mu, sigma;
  model.predict_batch(detail::gather_columns(cand, survivors, d), mu, sigma);
  std::size_t best = 0;
  double best_h = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < survivors.size(); ++i) {
    const double h = radius_upper_bound(mu[static_cast<Eigen::Index>(i)],
                                        sigma[static_cast<Eigen::Index>(i)], spec);
    if (h < best_h) {
      best_h = h;
      best = survivors[i];
    }
  }
  return StrategyChoice{detail::point_at(cand, best, d), false};
}

}  // namespace lipbo
