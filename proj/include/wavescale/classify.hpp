#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "wavescale/types.hpp"

namespace wavescale {

/// Per-column affine map fitted on training rows: (x - mean) / scale, where
/// scale is the training standard deviation (n - 1). Columns with zero
/// training spread are only centered and flagged in `constant`.
struct Standardizer {
  Eigen::RowVectorXd mean;
  Eigen::RowVectorXd scale;
  std::vector<bool> constant;

  static Standardizer fit(const RowMatrix& train);
  RowMatrix apply(const RowMatrix& x) const;
};

struct StandardizedSplit {
  RowMatrix train;
  RowMatrix test;
  Standardizer transform;
};

/// Throws EstimationError with fewer than two training rows.
StandardizedSplit standardize(const RowMatrix& train, const RowMatrix& test);

struct LogisticOptions {
  double C = 1.0;  // inverse regularization strength
  int max_iters = 20000;
  double tol = 1e-6;  // on the Euclidean norm of the full gradient
};

struct LogisticModel {
  Eigen::VectorXd weights;
  double bias = 0.0;
  int iterations = 0;
  bool converged = false;
  double objective = 0.0;
};

// Objective: mean negative log-likelihood + |w|^2 / (2 C n); the bias is not
// penalized.
double logistic_objective(const RowMatrix& x, std::span<const int> y, const Eigen::VectorXd& w,
                          double bias, double C);

/// Gradient of logistic_objective: writes d/dw into `grad_w` and returns d/dbias.
double logistic_gradient(const RowMatrix& x, std::span<const int> y, const Eigen::VectorXd& w,
                         double bias, double C, Eigen::VectorXd& grad_w);

/// Gradient descent from zero with Armijo backtracking. The step starts each
/// iteration at twice the last accepted step. If the gradient norm does not
/// fall below `tol` within `max_iters`, the last iterate is returned with
/// converged = false.
LogisticModel train_logistic(const RowMatrix& x, std::span<const int> y,
                             const LogisticOptions& options = {});

struct LogisticPrediction {
  std::vector<int> labels;
  std::vector<double> probabilities;  // P(label = 1)
};

/// sigmoid(w.x + b), label 1 when the probability is at least 0.5.
LogisticPrediction predict_logistic(const LogisticModel& model, const RowMatrix& x);

/// Majority vote among the k Euclidean-nearest training rows. Equal distances
/// prefer the lower training row; a tied vote goes to the nearest neighbour's
/// class among the tied ones. Throws ConfigError when k < 1 or k exceeds the
/// training size.
std::vector<int> knn_predict(const RowMatrix& train, std::span<const int> train_labels,
                             const RowMatrix& test, int k);

}  // namespace wavescale
