#pragma once

// Synthetic benchmark objectives with known optima, suggested Lipschitz
// constants for the normalized versions, and a parser for the plain-text
// constant tables shipped under data/. All functions are posed as
// maximization problems; evaluate_normalized rescales so the domain
// maximum is exactly 1.

#include <cmath>
#include <functional>
#include <istream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lipbo/geometry.hpp"

namespace lipbo {

struct Benchmark {
  std::string name;
  BoxDomain domain;
  std::function<double(const Point&)> raw;
  double raw_max;
  Point raw_argmax;
  double lipschitz;   // suggested constant for the normalized objective
  double range_min;   // informational lower bound of raw over the domain

  double evaluate_raw(const Point& x) const {
    if (!domain.contains(x))
      throw std::invalid_argument(name + ": point outside the domain");
    return raw(x);
  }

  /// Rescaled so the domain maximum is exactly 1. Positive maxima are
  /// divided out; a benchmark with a non-positive maximum would fall back
  /// to the affine map (raw - range_min)/(raw_max - range_min).
  double evaluate_normalized(const Point& x) const {
    const double v = evaluate_raw(x);
    if (raw_max > 0.0) return v / raw_max;
    return (v - range_min) / (raw_max - range_min);
  }
};

inline std::pair<Point, double> known_optimum(const Benchmark& b) {
  return {b.raw_argmax, b.raw_max};
}

inline double default_lipschitz(const Benchmark& b) { return b.lipschitz; }

namespace bench_detail {

inline constexpr double kHartman3A[4][3] = {
    {3.0, 10.0, 30.0}, {0.1, 10.0, 35.0}, {3.0, 10.0, 30.0}, {0.1, 10.0, 35.0}};
inline constexpr double kHartman3P[4][3] = {{0.3689, 0.1170, 0.2673},
                                            {0.4699, 0.4387, 0.7470},
                                            {0.1091, 0.8732, 0.5547},
                                            {0.0381, 0.5743, 0.8828}};
inline constexpr double kHartman6A[4][6] = {
    {10.0, 3.0, 17.0, 3.5, 1.7, 8.0},
    {0.05, 10.0, 17.0, 0.1, 8.0, 14.0},
    {3.0, 3.5, 1.7, 10.0, 17.0, 8.0},
    {17.0, 8.0, 0.05, 10.0, 0.1, 14.0}};
inline constexpr double kHartman6P[4][6] = {
    {0.1312, 0.1696, 0.5569, 0.0124, 0.8283, 0.5886},
    {0.2329, 0.4135, 0.8307, 0.3736, 0.1004, 0.9991},
    {0.2348, 0.1451, 0.3522, 0.2883, 0.3047, 0.6650},
    {0.4047, 0.8828, 0.8732, 0.5743, 0.1091, 0.0381}};
inline constexpr double kHartmanOmega[4] = {1.0, 1.2, 3.0, 3.2};

inline constexpr double kShekelOmega[10] = {0.1, 0.2, 0.2, 0.4, 0.4,
                                            0.6, 0.3, 0.7, 0.5, 0.5};
// One column per term; rows are the four input coordinates.
inline constexpr double kShekelB[4][10] = {
    {4.0, 1.0, 8.0, 6.0, 3.0, 2.0, 5.0, 8.0, 6.0, 7.0},
    {4.0, 1.0, 8.0, 6.0, 7.0, 9.0, 5.0, 1.0, 2.0, 3.6},
    {4.0, 1.0, 8.0, 6.0, 3.0, 2.0, 3.0, 8.0, 6.0, 7.0},
    {4.0, 1.0, 8.0, 6.0, 7.0, 9.0, 3.0, 1.0, 2.0, 3.6}};

template <std::size_t D>
double hartman(const Point& x, const double (&a)[4][D], const double (&p)[4][D]) {
  double sum = 0.0;
  for (int i = 0; i < 4; ++i) {
    double e = 0.0;
    for (std::size_t j = 0; j < D; ++j) {
      const double diff = x[j] - p[i][j];
      e += a[i][j] * diff * diff;
    }
    sum += kHartmanOmega[i] * std::exp(-e);
  }
  return sum;
}

}  // namespace bench_detail

inline Benchmark make_cosines() {
  return Benchmark{
      "cosines",
      BoxDomain({0.0, 0.0}, {1.0, 1.0}),
      [](const Point& x) {
        const double u = 1.6 * x[0] - 0.5;
        const double v = 1.6 * x[1] - 0.5;
        return 1.0 - (u * u + v * v - 0.3 * std::cos(3.0 * M_PI * u) -
                      0.3 * std::cos(3.0 * M_PI * v));
      },
      1.6,
      {0.3125, 0.3125},
      6.0,
      -1.7732};
}

inline Benchmark make_rosenbrock() {
  return Benchmark{
      "rosenbrock",
      BoxDomain({0.0, 0.0}, {1.0, 1.0}),
      [](const Point& x) {
        const double a = x[1] - x[0] * x[0];
        const double b = 1.0 - x[0];
        return 10.0 - 100.0 * a * a - b * b;
      },
      10.0,
      {1.0, 1.0},
      45.0,
      -91.0};
}

inline Benchmark make_hartman3() {
  return Benchmark{
      "hartman3",
      BoxDomain({0.0, 0.0, 0.0}, {1.0, 1.0, 1.0}),
      [](const Point& x) {
        return bench_detail::hartman(x, bench_detail::kHartman3A,
                                     bench_detail::kHartman3P);
      },
      3.862779787332663,
      {0.11458887418492841, 0.5556488940832305, 0.8525469854212677},
      3.0,
      0.0};
}

inline Benchmark make_hartman6() {
  return Benchmark{
      "hartman6",
      BoxDomain(Point(6, 0.0), Point(6, 1.0)),
      [](const Point& x) {
        return bench_detail::hartman(x, bench_detail::kHartman6A,
                                     bench_detail::kHartman6P);
      },
      3.3223680114155147,
      {0.20168950909365746, 0.15001069354111374, 0.4768739729250998,
       0.2753324275220782, 0.3116516172395686, 0.6573005345536702},
      3.0,
      0.0};
}

inline Benchmark make_shekel() {
  return Benchmark{
      "shekel",
      BoxDomain(Point(4, 3.0), Point(4, 6.0)),
      [](const Point& x) {
        double sum = 0.0;
        for (int i = 0; i < 10; ++i) {
          double dist_sq = 0.0;
          for (int j = 0; j < 4; ++j) {
            const double diff = x[j] - bench_detail::kShekelB[j][i];
            dist_sq += diff * diff;
          }
          sum += 1.0 / (bench_detail::kShekelOmega[i] + dist_sq);
        }
        return sum;
      },
      10.536409816692046,
      {4.000746533201553, 4.000592934538832, 3.9996633972202558,
       3.9995098012852255},
      3.0,
      0.3954};
}

inline Benchmark make_michalewicz() {
  return Benchmark{
      "michalewicz",
      BoxDomain(Point(5, 0.0), Point(5, M_PI)),
      [](const Point& x) {
        double sum = 0.0;
        for (int i = 0; i < 5; ++i) {
          const double s = std::sin((i + 1) * x[i] * x[i] / M_PI);
          sum += std::sin(x[i]) * std::pow(s, 20.0);
        }
        return sum;
      },
      4.687658179088149,
      {2.202905514180523, 1.5707963267948966, 1.2849915703565453,
       1.923058469370575, 1.7204697712816472},
      6.0,
      0.0};
}

inline const std::vector<Benchmark>& benchmark_suite() {
  static const std::vector<Benchmark> suite = {
      make_cosines(),  make_rosenbrock(), make_hartman3(),
      make_hartman6(), make_shekel(),     make_michalewicz()};
  return suite;
}

inline const Benchmark& benchmark_by_name(const std::string& name) {
  for (const Benchmark& b : benchmark_suite())
    if (b.name == name) return b;
  throw std::invalid_argument("unknown benchmark: " + name);
}

/// Parse whitespace-separated constant tables: a block starts with a name
/// on its own line and collects numeric rows until the next name or EOF.
/// '#' starts a comment; blank lines are ignored.
inline std::map<std::string, std::vector<std::vector<double>>>
load_constant_tables(std::istream& in) {
  std::map<std::string, std::vector<std::vector<double>>> tables;
  std::string line;
  std::string current;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    std::istringstream row(line);
    std::string first;
    if (!(row >> first)) continue;  // blank line
    double value;
    if (std::istringstream probe(first); probe >> value && probe.eof()) {
      if (current.empty())
        throw std::runtime_error("numeric row before any table name");
      std::vector<double> values{value};
      while (row >> value) values.push_back(value);
      tables[current].push_back(std::move(values));
    } else {
      std::string rest;
      if (row >> rest)
        throw std::runtime_error("table name must be alone on its line: " + line);
      current = first;
      tables[current];  // a named block may legitimately stay empty
    }
  }
  return tables;
}

}  // namespace lipbo
