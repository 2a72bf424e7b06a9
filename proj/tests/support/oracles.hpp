#pragma once

// Independent reference implementations used only by tests: numeric
// quadrature for the acquisition integrals, a dense Gaussian-elimination
// solver for posterior cross-checks, and a derivative-free refiner for
// validating benchmark optima. Nothing here shares code with the library
// paths it checks.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace lipbo_test {

// 20-point Gauss-Legendre rule on [-1, 1].
inline constexpr double kGlNode[10] = {
    0.0765265211334973, 0.2277858511416451, 0.3737060887154195,
    0.5108670019508271, 0.6360536807265150, 0.7463319064601508,
    0.8391169718222188, 0.9122344282513259, 0.9639719272779138,
    0.9931285991850949};
inline constexpr double kGlWeight[10] = {
    0.1527533871307258, 0.1491729864726037, 0.1420961093183820,
    0.1316886384491766, 0.1181945319615184, 0.1019301198172404,
    0.0832767415767048, 0.0626720483341091, 0.0406014298003869,
    0.0176140071391521};

/// Composite 20-point Gauss-Legendre quadrature with panels of width <= 0.5.
template <typename F>
double integrate(F&& f, double lo, double hi) {
  if (!(hi > lo)) return 0.0;
  const int panels = std::max(1, static_cast<int>(std::ceil((hi - lo) / 0.5)));
  const double width = (hi - lo) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = lo + (p + 0.5) * width;
    const double half = 0.5 * width;
    double panel = 0.0;
    for (int i = 0; i < 10; ++i)
      panel += kGlWeight[i] *
               (f(mid - half * kGlNode[i]) + f(mid + half * kGlNode[i]));
    total += panel * half;
  }
  return total;
}

inline double std_normal_pdf(double t) {
  return 0.39894228040143267794 * std::exp(-0.5 * t * t);
}

/// E[(f - y_max)^+] for f ~ N(mu, sigma^2) by quadrature in standardized
/// coordinates: sigma * integral of (t - u1) phi(t) over [u1, inf).
inline double ei_by_quadrature(double mu, double sigma, double y_max) {
  if (sigma <= 0.0) return std::max(mu - y_max, 0.0);
  const double u1 = (y_max - mu) / sigma;
  const double lo = std::max(u1, -46.0);
  const double hi = 46.0;
  return sigma *
         integrate([&](double t) { return (t - u1) * std_normal_pdf(t); }, lo, hi);
}

/// E[(f - y_max) 1{0 <= f - y_max <= maximum - y_max}] by quadrature.
inline double bounded_ei_by_quadrature(double mu, double sigma, double y_max,
                                       double maximum) {
  if (sigma <= 0.0) {
    const double delta = mu - y_max;
    return (delta >= 0.0 && delta <= maximum - y_max) ? delta : 0.0;
  }
  const double u1 = (y_max - mu) / sigma;
  const double u2 = (maximum - mu) / sigma;
  const double lo = std::max(u1, -46.0);
  const double hi = std::min(u2, 46.0);
  return sigma *
         integrate([&](double t) { return (t - u1) * std_normal_pdf(t); }, lo, hi);
}

/// Dense linear solve by Gaussian elimination with partial pivoting.
inline std::vector<double> solve_dense(std::vector<std::vector<double>> a,
                                       std::vector<double> b) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    if (a[col][col] == 0.0) throw std::runtime_error("singular system");
    for (std::size_t r = col + 1; r < n; ++r) {
      const double factor = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
      b[r] -= factor * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= a[i][c] * x[c];
    x[i] = s / a[i][i];
  }
  return x;
}

/// Compass (pattern) search: coordinate-wise steps with shrinking step
/// size, clamped to the box. Derivative-free and independent of any
/// library optimizer.
inline std::pair<std::vector<double>, double> refine_maximum(
    const std::function<double(const std::vector<double>&)>& f,
    const std::vector<double>& lower, const std::vector<double>& upper,
    std::vector<double> x, double step, double min_step) {
  double fx = f(x);
  const std::size_t d = x.size();
  while (step > min_step) {
    bool improved = false;
    for (std::size_t j = 0; j < d; ++j) {
      for (double dir : {+1.0, -1.0}) {
        std::vector<double> y = x;
        y[j] = std::min(upper[j], std::max(lower[j], x[j] + dir * step));
        const double fy = f(y);
        if (fy > fx) {
          x = std::move(y);
          fx = fy;
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return {x, fx};
}

}  // namespace lipbo_test
