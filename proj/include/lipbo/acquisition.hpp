#pragma once

// Closed-form acquisition scores under a Gaussian posterior: expected
// improvement over the incumbent, and a bounded variant that truncates the
// improvement to [0, M - y_max] when the objective's maximum M is known.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "lipbo/geometry.hpp"

namespace lipbo {

inline double normal_pdf(double z) {
  return 0.39894228040143267794 * std::exp(-0.5 * z * z);
}

/// Standard normal CDF through erfc, accurate to ~1e-15 absolute.
inline double normal_cdf(double z) {
  return 0.5 * std::erfc(-z * 0.70710678118654752440);
}

struct AcquisitionInput {
  double mu = 0.0;
  double sigma = 0.0;   // >= 0
  double y_max = 0.0;   // incumbent value
  double maximum = 0.0; // known objective maximum; bounded variant only
};

/// E[(f - y_max)^+] for f ~ N(mu, sigma^2). At sigma = 0 this degenerates
/// to the deterministic improvement max(mu - y_max, 0).
inline double expected_improvement(double mu, double sigma, double y_max) {
  if (sigma < 0.0) throw std::invalid_argument("sigma must be >= 0");
  const double delta = mu - y_max;
  if (sigma == 0.0) return std::max(delta, 0.0);
  const double z = delta / sigma;
  return std::max(0.0, delta * normal_cdf(z) + sigma * normal_pdf(z));
}

inline double expected_improvement(const AcquisitionInput& in) {
  return expected_improvement(in.mu, in.sigma, in.y_max);
}

/// Closed-form flavor of the bounded improvement. `exact` keeps the density
/// term at the upper truncation point; `omit_upper_pdf` drops it, matching
/// implementations that evaluate the truncated integral without that term.
enum class BoundedEiForm { exact, omit_upper_pdf };

/// E[(f - y_max) * 1{0 <= f - y_max <= maximum - y_max}]. With
/// u1 = (y_max - mu)/sigma and u2 = (maximum - mu)/sigma the exact form is
///   sigma * ((phi(u1) - phi(u2)) + u1 * (Phi(u1) - Phi(u2))).
inline double bounded_expected_improvement(
    double mu, double sigma, double y_max, double maximum,
    BoundedEiForm form = BoundedEiForm::exact) {
  if (sigma < 0.0) throw std::invalid_argument("sigma must be >= 0");
  if (maximum < y_max)
    throw std::invalid_argument("maximum must be >= y_max");
  if (sigma == 0.0) {
    const double delta = mu - y_max;
    return (delta >= 0.0 && delta <= maximum - y_max) ? delta : 0.0;
  }
  const double u1 = (y_max - mu) / sigma;
  const double u2 = (maximum - mu) / sigma;
  double core = u1 * (normal_cdf(u1) - normal_cdf(u2)) + normal_pdf(u1);
  if (form == BoundedEiForm::exact) core -= normal_pdf(u2);
  return std::max(0.0, sigma * core);
}

inline double bounded_expected_improvement(const AcquisitionInput& in,
                                           BoundedEiForm form = BoundedEiForm::exact) {
  return bounded_expected_improvement(in.mu, in.sigma, in.y_max, in.maximum, form);
}

/// Candidate with the maximal score; ties go to the lowest index.
template <typename Score>
const Point& argmax_score(Score&& score, const std::vector<Point>& candidates) {
  if (candidates.empty())
    throw std::invalid_argument("argmax over an empty candidate list");
  std::size_t best = 0;
  double best_value = score(candidates[0]);
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const double value = score(candidates[i]);
    if (value > best_value) {
      best = i;
      best_value = value;
    }
  }
  return candidates[best];
}

}  // namespace lipbo
