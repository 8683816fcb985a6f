#include "wavescale/classify.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wavescale/errors.hpp"

namespace wavescale {

Standardizer Standardizer::fit(const RowMatrix& train) {
  const Eigen::Index n = train.rows();
  if (n < 2) throw EstimationError("standardization needs at least two training rows");
  Standardizer s;
  s.mean = train.colwise().mean();
  s.scale.resize(train.cols());
  s.constant.assign(static_cast<std::size_t>(train.cols()), false);
  for (Eigen::Index c = 0; c < train.cols(); ++c) {
    const double ss = (train.col(c).array() - s.mean(c)).square().sum();
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    if (sd > 0.0) {
      s.scale(c) = sd;
    } else {
      s.scale(c) = 1.0;
      s.constant[static_cast<std::size_t>(c)] = true;
    }
  }
  return s;
}

RowMatrix Standardizer::apply(const RowMatrix& x) const {
  RowMatrix out = x;
  out.rowwise() -= mean;
  out.array().rowwise() /= scale.array();
  return out;
}

StandardizedSplit standardize(const RowMatrix& train, const RowMatrix& test) {
  StandardizedSplit out;
  out.transform = Standardizer::fit(train);
  out.train = out.transform.apply(train);
  out.test = out.transform.apply(test);
  return out;
}

namespace {

// log(1 + exp(z)) without overflow.
double softplus(double z) { return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

void check_shapes(const RowMatrix& x, std::span<const int> y) {
  if (static_cast<std::size_t>(x.rows()) != y.size())
    throw ShapeError("logistic regression: " + std::to_string(x.rows()) + " rows but " +
                     std::to_string(y.size()) + " labels");
  if (x.rows() == 0) throw EstimationError("logistic regression needs at least one row");
}

}  // namespace

double logistic_objective(const RowMatrix& x, std::span<const int> y, const Eigen::VectorXd& w,
                          double bias, double C) {
  const Eigen::VectorXd z = (x * w).array() + bias;
  double loss = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i)
    loss += y[static_cast<std::size_t>(i)] == 1 ? softplus(-z(i)) : softplus(z(i));
  const double n = static_cast<double>(x.rows());
  return loss / n + w.squaredNorm() / (2.0 * C * n);
}

double logistic_gradient(const RowMatrix& x, std::span<const int> y, const Eigen::VectorXd& w,
                         double bias, double C, Eigen::VectorXd& grad_w) {
  const Eigen::VectorXd z = (x * w).array() + bias;
  Eigen::VectorXd residual(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i)
    residual(i) = sigmoid(z(i)) - static_cast<double>(y[static_cast<std::size_t>(i)]);
  const double n = static_cast<double>(x.rows());
  grad_w = x.transpose() * residual / n + w / (C * n);
  return residual.sum() / n;
}

LogisticModel train_logistic(const RowMatrix& x, std::span<const int> y,
                             const LogisticOptions& options) {
  check_shapes(x, y);
  if (options.C <= 0.0) throw ConfigError("logistic C must be positive");

  LogisticModel m;
  m.weights = Eigen::VectorXd::Zero(x.cols());
  m.bias = 0.0;
  Eigen::VectorXd grad_w;
  double grad_b = logistic_gradient(x, y, m.weights, m.bias, options.C, grad_w);
  double f = logistic_objective(x, y, m.weights, m.bias, options.C);
  double step = 1.0;

  for (m.iterations = 0; m.iterations < options.max_iters; ++m.iterations) {
    const double grad_sq = grad_w.squaredNorm() + grad_b * grad_b;
    if (std::sqrt(grad_sq) < options.tol) {
      m.converged = true;
      break;
    }
    step *= 2.0;
    for (;;) {
      const Eigen::VectorXd w_next = m.weights - step * grad_w;
      const double b_next = m.bias - step * grad_b;
      const double f_next = logistic_objective(x, y, w_next, b_next, options.C);
      if (f_next <= f - 0.5 * step * grad_sq || step < 1e-16) {
        m.weights = w_next;
        m.bias = b_next;
        f = f_next;
        break;
      }
      step *= 0.5;
    }
    grad_b = logistic_gradient(x, y, m.weights, m.bias, options.C, grad_w);
  }
  m.objective = f;
  return m;
}

LogisticPrediction predict_logistic(const LogisticModel& model, const RowMatrix& x) {
  if (x.cols() != model.weights.size())
    throw ShapeError("logistic model has " + std::to_string(model.weights.size()) +
                     " weights but input has " + std::to_string(x.cols()) + " columns");
  LogisticPrediction out;
  const Eigen::VectorXd z = (x * model.weights).array() + model.bias;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    const double p = sigmoid(z(i));
    out.probabilities.push_back(p);
    out.labels.push_back(p >= 0.5 ? 1 : 0);
  }
  return out;
}

std::vector<int> knn_predict(const RowMatrix& train, std::span<const int> train_labels,
                             const RowMatrix& test, int k) {
  if (k < 1) throw ConfigError("k-NN needs k >= 1, got " + std::to_string(k));
  if (static_cast<std::size_t>(k) > train_labels.size())
    throw ConfigError("k-NN k = " + std::to_string(k) + " exceeds training size " +
                      std::to_string(train_labels.size()));
  if (static_cast<std::size_t>(train.rows()) != train_labels.size())
    throw ShapeError("k-NN: training rows and labels differ in count");
  if (train.cols() != test.cols()) throw ShapeError("k-NN: train and test column counts differ");

  const auto kk = static_cast<std::size_t>(k);
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(test.rows()));
  std::vector<std::pair<double, std::size_t>> dist(static_cast<std::size_t>(train.rows()));
  for (Eigen::Index t = 0; t < test.rows(); ++t) {
    for (Eigen::Index r = 0; r < train.rows(); ++r)
      dist[static_cast<std::size_t>(r)] = {(train.row(r) - test.row(t)).squaredNorm(),
                                           static_cast<std::size_t>(r)};
    std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(kk), dist.end());
    std::size_t votes_case = 0;
    for (std::size_t i = 0; i < kk; ++i) votes_case += train_labels[dist[i].second] == 1 ? 1 : 0;
    const std::size_t votes_control = kk - votes_case;
    int label;
    if (votes_case != votes_control)
      label = votes_case > votes_control ? 1 : 0;
    else
      label = train_labels[dist[0].second];
    out.push_back(label);
  }
  return out;
}

}  // namespace wavescale
