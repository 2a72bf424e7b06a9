#pragma once

// Noise-free Gaussian-process regression with the squared-exponential
// kernel k(x1, x2) = exp(-||x1 - x2||^2 / width). Zero prior mean, unit
// prior variance, a small diagonal jitter to keep the Cholesky
// factorization stable. Observation counts stay tiny here (tens of
// points), so every fit is a fresh O(n^3) factorization.

#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "lipbo/geometry.hpp"

namespace lipbo {

struct KernelParams {
  double width;   // divisor of the squared distance inside the exponential
  double jitter;  // diagonal regularizer added to the Gram matrix

  explicit KernelParams(double width_, double jitter_ = 1e-10)
      : width(width_), jitter(jitter_) {
    if (!(width > 0.0)) throw std::invalid_argument("kernel width must be positive");
    if (jitter < 0.0) throw std::invalid_argument("kernel jitter must be >= 0");
  }
};

inline double gaussian_kernel(const Point& x1, const Point& x2,
                              const KernelParams& params) {
  return std::exp(-squared_distance(x1, x2) / params.width);
}

struct Prediction {
  double mu;
  double sigma;
};

/// Fitted posterior: training data, the lower Cholesky factor of the
/// regularized Gram matrix, and the solved weight vector. Immutable after
/// fit(); predict is pure and safe to call concurrently.
class PosteriorModel {
 public:
  PosteriorModel(Eigen::MatrixXd train_x, Eigen::VectorXd train_y,
                 KernelParams params, Eigen::MatrixXd chol_lower,
                 Eigen::VectorXd weights)
      : x_(std::move(train_x)),
        y_(std::move(train_y)),
        params_(params),
        chol_(std::move(chol_lower)),
        weights_(std::move(weights)) {}

  std::size_t dimension() const { return static_cast<std::size_t>(x_.rows()); }
  std::size_t size() const { return static_cast<std::size_t>(x_.cols()); }
  const Eigen::MatrixXd& train_x() const { return x_; }
  const Eigen::VectorXd& train_y() const { return y_; }
  const KernelParams& params() const { return params_; }
  const Eigen::MatrixXd& factorization() const { return chol_; }
  const Eigen::VectorXd& weights() const { return weights_; }

  Prediction predict(const Point& x) const {
    if (x.size() != dimension())
      throw std::invalid_argument("query dimension does not match model");
    const Eigen::Map<const Eigen::VectorXd> q(x.data(),
                                              static_cast<Eigen::Index>(x.size()));
    Eigen::VectorXd k =
        (-(x_.colwise() - q).colwise().squaredNorm() / params_.width)
            .array()
            .exp()
            .matrix()
            .transpose();
    const double mu = k.dot(weights_);
    chol_.triangularView<Eigen::Lower>().solveInPlace(k);
    const double variance = 1.0 - k.squaredNorm();
    return Prediction{mu, std::sqrt(std::max(variance, 0.0))};
  }

  /// Vectorized predict over the columns of `queries` (d x m).
  void predict_batch(const Eigen::Ref<const Eigen::MatrixXd>& queries,
                     Eigen::VectorXd& mu, Eigen::VectorXd& sigma) const {
    if (queries.rows() != x_.rows())
      throw std::invalid_argument("query dimension does not match model");
    const Eigen::Index m = queries.cols();
    Eigen::MatrixXd cross = x_.transpose() * queries;  // n x m
    cross *= 2.0;
    cross.colwise() -= x_.colwise().squaredNorm().transpose();
    cross.rowwise() -= queries.colwise().squaredNorm();
    // cross now holds -||x_i - q_j||^2.
    Eigen::MatrixXd k = (cross / params_.width).array().exp();
    mu = k.transpose() * weights_;
    chol_.triangularView<Eigen::Lower>().solveInPlace(k);
    sigma.resize(m);
    for (Eigen::Index j = 0; j < m; ++j) {
      const double variance = 1.0 - k.col(j).squaredNorm();
      sigma[j] = std::sqrt(std::max(variance, 0.0));
    }
  }

 private:
  Eigen::MatrixXd x_;  // d x n, one column per training point
  Eigen::VectorXd y_;
  KernelParams params_;
  Eigen::MatrixXd chol_;  // lower triangular factor of K + jitter * I
  Eigen::VectorXd weights_;
};

inline Eigen::MatrixXd observations_as_matrix(const ObservationSet& obs) {
  const std::size_t n = obs.size();
  const std::size_t d = obs.items().front().x.size();
  Eigen::MatrixXd x(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j)
      x(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) =
          obs.items()[i].x[j];
  return x;
}

inline PosteriorModel fit(const ObservationSet& obs, const KernelParams& params) {
  if (obs.empty())
    throw std::invalid_argument("cannot fit a posterior to zero observations");
  const Eigen::Index n = static_cast<Eigen::Index>(obs.size());
  Eigen::MatrixXd x = observations_as_matrix(obs);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) y[i] = obs.items()[static_cast<std::size_t>(i)].y;

  const Eigen::VectorXd sq = x.colwise().squaredNorm().transpose();
  Eigen::MatrixXd gram = x.transpose() * x;
  gram *= 2.0;
  gram.colwise() -= sq;
  gram.rowwise() -= sq.transpose();
  gram = (gram / params.width).array().exp();
  gram.diagonal().array() += params.jitter;

  Eigen::LLT<Eigen::MatrixXd> llt(gram);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error(
        "Gram matrix is not positive definite; observations may be too close "
        "together - try a larger jitter");
  Eigen::VectorXd weights = llt.solve(y);
  return PosteriorModel(std::move(x), std::move(y), params,
                        llt.matrixL(), std::move(weights));
}

}  // namespace lipbo
