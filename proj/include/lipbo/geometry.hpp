#pragma once

// Search-space geometry: axis-aligned box domains, elimination spheres, the
// exclusion region left after samples rule parts of the box out, and the
// uniform samplers everything else is built on.

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lipbo/random.hpp"

namespace lipbo {

using Point = std::vector<double>;

inline void require_same_dimension(const Point& a, const Point& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("point dimensions do not match");
}

inline double squared_distance(const Point& a, const Point& b) {
  require_same_dimension(a, b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

/// Cartesian product of closed intervals [lower_i, upper_i].
class BoxDomain {
 public:
  BoxDomain(Point lower, Point upper)
      : lower_(std::move(lower)), upper_(std::move(upper)) {
    if (lower_.size() != upper_.size())
      throw std::invalid_argument("box bounds have different dimensions");
    if (lower_.empty())
      throw std::invalid_argument("box must have dimension >= 1");
    for (std::size_t i = 0; i < lower_.size(); ++i)
      if (!(lower_[i] < upper_[i]))
        throw std::invalid_argument("box requires lower < upper per axis");
  }

  std::size_t dimension() const { return lower_.size(); }
  const Point& lower() const { return lower_; }
  const Point& upper() const { return upper_; }

  /// Closed-box membership: boundary points are inside.
  bool contains(const Point& x) const {
    if (x.size() != lower_.size())
      throw std::invalid_argument("point dimension does not match box");
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i] < lower_[i] || x[i] > upper_[i]) return false;
    return true;
  }

  /// Sum of squared side lengths. This is the default exploration kernel
  /// width: wide enough that every sample influences the whole box.
  double squared_diameter() const {
    double s = 0.0;
    for (std::size_t i = 0; i < lower_.size(); ++i) {
      const double d = upper_[i] - lower_[i];
      s += d * d;
    }
    return s;
  }

 private:
  Point lower_;
  Point upper_;
};

inline bool box_contains(const BoxDomain& domain, const Point& x) {
  return domain.contains(x);
}

/// Ball around a sample. A radius <= 0 degenerates to the center point
/// alone, which keeps zero-information samples harmless.
struct Sphere {
  Point center;
  double radius = 0.0;
};

/// Strict interior membership; a point exactly on the boundary is outside.
inline bool sphere_contains(const Sphere& s, const Point& x) {
  require_same_dimension(s.center, x);
  if (s.radius <= 0.0) return x == s.center;
  return squared_distance(s.center, x) < s.radius * s.radius;
}

/// Radius of the ball that a sample with value y rules out, given the
/// objective's maximum and a Lipschitz constant.
inline double realized_radius(double maximum, double lipschitz, double y) {
  if (!(lipschitz > 0.0))
    throw std::invalid_argument("Lipschitz constant must be positive");
  return (maximum - y) / lipschitz;
}

struct Observation {
  Point x;  // expected to lie inside the domain it was drawn from
  double y = 0.0;
};

/// Ordered set of evaluated samples with the running best value. Exact
/// duplicate locations are rejected: the noise-free Gram matrix would be
/// singular under duplicates.
class ObservationSet {
 public:
  void add(Point x, double y) {
    for (const Observation& o : items_)
      if (o.x == x) throw std::invalid_argument("duplicate observation location");
    if (items_.empty() || y > y_max_) y_max_ = y;
    items_.push_back(Observation{std::move(x), y});
  }

  void add(Observation o) { add(std::move(o.x), o.y); }

  const std::vector<Observation>& items() const { return items_; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }

  double y_max() const {
    if (items_.empty())
      throw std::logic_error("y_max is undefined on an empty observation set");
    return y_max_;
  }

 private:
  std::vector<Observation> items_;
  double y_max_ = 0.0;
};

/// The unexplored part of a box: everything inside the domain and outside
/// every elimination sphere.
class ExclusionRegion {
 public:
  explicit ExclusionRegion(BoxDomain domain) : domain_(std::move(domain)) {}

  void add_sphere(Sphere s) {
    if (s.center.size() != domain_.dimension())
      throw std::invalid_argument("sphere dimension does not match domain");
    spheres_.push_back(std::move(s));
  }

  const BoxDomain& domain() const { return domain_; }
  const std::vector<Sphere>& spheres() const { return spheres_; }

 private:
  BoxDomain domain_;
  std::vector<Sphere> spheres_;
};

inline bool is_unexplored(const ExclusionRegion& region, const Point& x) {
  if (!region.domain().contains(x)) return false;
  for (const Sphere& s : region.spheres())
    if (sphere_contains(s, x)) return false;
  return true;
}

/// `count * d` coordinates, point-major, uniform over the box.
inline std::vector<double> uniform_box_sample_flat(const BoxDomain& domain,
                                                   RandomStream& rng,
                                                   int count) {
  if (count < 1) throw std::invalid_argument("sample count must be >= 1");
  const std::size_t d = domain.dimension();
  std::vector<double> flat(static_cast<std::size_t>(count) * d);
  for (int i = 0; i < count; ++i)
    for (std::size_t j = 0; j < d; ++j)
      flat[static_cast<std::size_t>(i) * d + j] =
          rng.uniform(domain.lower()[j], domain.upper()[j]);
  return flat;
}

inline std::vector<Point> uniform_box_sample(const BoxDomain& domain,
                                             RandomStream& rng, int count) {
  const std::vector<double> flat = uniform_box_sample_flat(domain, rng, count);
  const std::size_t d = domain.dimension();
  std::vector<Point> points(count);
  for (int i = 0; i < count; ++i)
    points[i].assign(flat.begin() + static_cast<std::ptrdiff_t>(i) * d,
                     flat.begin() + static_cast<std::ptrdiff_t>(i + 1) * d);
  return points;
}

/// Unit-ball points, point-major: direction from normalized Gaussian draws,
/// radial fraction U^(1/d). Each point consumes exactly 2d + 1 uniforms.
inline std::vector<double> unit_ball_sample_flat(std::size_t dimension,
                                                 RandomStream& rng,
                                                 int count) {
  if (count < 1) throw std::invalid_argument("sample count must be >= 1");
  std::vector<double> flat(static_cast<std::size_t>(count) * dimension);
  std::vector<double> dir(dimension);
  for (int i = 0; i < count; ++i) {
    double norm2 = 0.0;
    do {
      norm2 = 0.0;
      for (std::size_t j = 0; j < dimension; ++j) {
        dir[j] = rng.normal();
        norm2 += dir[j] * dir[j];
      }
    } while (norm2 == 0.0);
    const double radial =
        std::pow(rng.uniform01(), 1.0 / static_cast<double>(dimension));
    const double scale = radial / std::sqrt(norm2);
    for (std::size_t j = 0; j < dimension; ++j)
      flat[static_cast<std::size_t>(i) * dimension + j] = dir[j] * scale;
  }
  return flat;
}

inline std::vector<Point> uniform_ball_sample(const Point& center,
                                              double radius,
                                              RandomStream& rng, int count) {
  if (!(radius > 0.0)) throw std::invalid_argument("ball radius must be positive");
  const std::size_t d = center.size();
  const std::vector<double> unit = unit_ball_sample_flat(d, rng, count);
  std::vector<Point> points(count, Point(d));
  for (int i = 0; i < count; ++i)
    for (std::size_t j = 0; j < d; ++j)
      points[i][j] = center[j] + radius * unit[static_cast<std::size_t>(i) * d + j];
  return points;
}

}  // namespace lipbo
