#include "wavescale/evaluation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <ostream>
#include <random>

#include "wavescale/csv.hpp"
#include "wavescale/errors.hpp"
#include "wavescale/parallel.hpp"

namespace wavescale {

ClassifierSpec parse_classifier(std::string_view text) {
  ClassifierSpec spec;
  if (text == "logistic" || text == "logreg") {
    spec.kind = ClassifierKind::logistic;
    return spec;
  }
  if (text == "knn") {
    spec.kind = ClassifierKind::knn;
    return spec;
  }
  if (text.starts_with("knn:")) {
    const auto digits = text.substr(4);
    int k = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (ec != std::errc{} || ptr != digits.data() + digits.size() || k < 1)
      throw ConfigError("bad k in classifier '" + std::string(text) + "'");
    spec.kind = ClassifierKind::knn;
    spec.k = k;
    return spec;
  }
  throw ConfigError("unknown classifier '" + std::string(text) + "' (expected logistic or knn)");
}

std::string classifier_name(const ClassifierSpec& spec) {
  if (spec.kind == ClassifierKind::logistic) return "logistic";
  return "knn" + std::to_string(spec.k);
}

SelectionMode parse_selection_mode(std::string_view name) {
  if (name == "per-split" || name == "per_split" || name == "split") return SelectionMode::per_split;
  if (name == "global") return SelectionMode::global;
  throw ConfigError("unknown selection mode '" + std::string(name) +
                    "' (expected per-split or global)");
}

std::string_view selection_mode_name(SelectionMode mode) {
  return mode == SelectionMode::global ? "global" : "per-split";
}

void SplitSpec::validate() const {
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    throw ConfigError("train fraction must lie in (0, 1), got " + format_number(train_fraction));
  if (repeats < 1) throw ConfigError("repeats must be at least 1, got " + std::to_string(repeats));
}

std::uint64_t repeat_seed(std::uint64_t master_seed, std::size_t repeat) {
  return derive_seed(master_seed, 0x5b11, repeat);
}

namespace {

bool trainable(std::span<const int> labels, std::span<const std::size_t> rows) {
  std::size_t cases = 0;
  for (const auto r : rows) cases += labels[r] == kCase ? 1 : 0;
  return cases >= 2 && rows.size() - cases >= 2;
}

std::vector<int> gather(std::span<const int> labels, std::span<const std::size_t> rows) {
  std::vector<int> out;
  out.reserve(rows.size());
  for (const auto r : rows) out.push_back(labels[r]);
  return out;
}

RowMatrix gather(const RowMatrix& values, std::span<const std::size_t> rows,
                 std::span<const std::size_t> cols) {
  RowMatrix out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          values(static_cast<Eigen::Index>(rows[i]), static_cast<Eigen::Index>(cols[j]));
  return out;
}

double accuracy(std::span<const int> predicted, std::span<const int> truth) {
  if (truth.empty()) return 0.0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) hits += predicted[i] == truth[i] ? 1 : 0;
  return 100.0 * static_cast<double>(hits) / static_cast<double>(truth.size());
}

}  // namespace

Split draw_split(std::span<const int> labels, double train_fraction, std::uint64_t seed) {
  const std::size_t n = labels.size();
  const auto n_train = static_cast<std::size_t>(std::floor(train_fraction * static_cast<double>(n)));
  if (n_train < 4 || n_train >= n)
    throw ConfigError("split of " + std::to_string(n) + " rows with fraction " +
                      format_number(train_fraction) + " leaves " + std::to_string(n_train) +
                      " training rows");
  Split split;
  std::vector<std::size_t> order(n);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::mt19937_64 rng(attempt == 0 ? seed : derive_seed(seed, 0xd1a, static_cast<std::uint64_t>(attempt)));
    std::shuffle(order.begin(), order.end(), rng);
    split.train.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train));
    if (!trainable(labels, split.train)) {
      ++split.redraws;
      continue;
    }
    split.test.assign(order.begin() + static_cast<std::ptrdiff_t>(n_train), order.end());
    std::sort(split.train.begin(), split.train.end());
    std::sort(split.test.begin(), split.test.end());
    return split;
  }
  throw EstimationError("could not draw a training split with both classes after 1000 attempts");
}

std::vector<std::size_t> select_features_for_split(const RowMatrix& values,
                                                   std::span<const int> labels,
                                                   std::span<const std::size_t> train_rows,
                                                   std::size_t p) {
  return select_top(fisher_scores(values, labels, train_rows), p);
}

RepeatRecord run_repeat(const RowMatrix& values, std::span<const int> labels, const Split& split,
                        const ClassifierSpec& classifier, std::span<const std::size_t> features,
                        bool standardize) {
  RowMatrix x_train = gather(values, split.train, features);
  RowMatrix x_test = gather(values, split.test, features);
  if (standardize) {
    auto s = wavescale::standardize(x_train, x_test);
    x_train = std::move(s.train);
    x_test = std::move(s.test);
  }
  const auto y_train = gather(labels, split.train);
  const auto y_test = gather(labels, split.test);

  RepeatRecord rec;
  rec.redraws = split.redraws;
  rec.features.assign(features.begin(), features.end());
  if (classifier.kind == ClassifierKind::logistic) {
    const auto model = train_logistic(x_train, y_train, classifier.logistic);
    rec.converged = model.converged;
    rec.train_accuracy = accuracy(predict_logistic(model, x_train).labels, y_train);
    rec.test_accuracy = accuracy(predict_logistic(model, x_test).labels, y_test);
  } else {
    rec.train_accuracy = accuracy(knn_predict(x_train, y_train, x_train, classifier.k), y_train);
    rec.test_accuracy = accuracy(knn_predict(x_train, y_train, x_test, classifier.k), y_test);
  }
  return rec;
}

namespace {

EvalReport aggregate(const ClassifierSpec& classifier, const EvalOptions& options, std::size_t p,
                     std::vector<RepeatRecord> records) {
  EvalReport report;
  report.classifier = classifier_name(classifier);
  report.selection = options.selection;
  report.standardized = options.standardize;
  report.p = p;
  std::vector<double> test, train;
  for (const auto& r : records) {
    test.push_back(r.test_accuracy);
    train.push_back(r.train_accuracy);
    report.redraws += r.redraws;
    report.nonconverged += r.converged ? 0 : 1;
  }
  report.test = mean_std(test);
  report.train = mean_std(train);
  if (options.keep_repeats) report.records = std::move(records);
  return report;
}

void check_p(const FeatureMatrix& features, std::size_t p) {
  if (p < 1 || p > features.features())
    throw ConfigError("feature count p = " + std::to_string(p) + " outside 1.." +
                      std::to_string(features.features()));
}

}  // namespace

std::vector<EvalReport> accuracy_vs_feature_count(const FeatureMatrix& features,
                                                  const ClassifierSpec& classifier,
                                                  std::span<const std::size_t> p_values,
                                                  const SplitSpec& split,
                                                  const EvalOptions& options) {
  split.validate();
  if (p_values.empty()) throw ConfigError("empty feature-count range");
  for (const auto p : p_values) check_p(features, p);
  if (classifier.kind == ClassifierKind::knn && classifier.k < 1)
    throw ConfigError("k-NN needs k >= 1, got " + std::to_string(classifier.k));
  if (features.labels.size() != features.samples())
    throw ShapeError("feature matrix has " + std::to_string(features.samples()) + " rows but " +
                     std::to_string(features.labels.size()) + " labels");

  const std::size_t max_p = *std::max_element(p_values.begin(), p_values.end());
  std::vector<std::size_t> global_order;
  if (options.selection == SelectionMode::global)
    global_order = select_top(fisher_scores(features), max_p);

  const auto repeats = static_cast<std::size_t>(split.repeats);
  const std::size_t np = p_values.size();
  // slot [repeat * np + pi]
  std::vector<RepeatRecord> slots(repeats * np);
  parallel_for(repeats, resolve_threads(options.threads), [&](std::size_t r) {
    std::vector<int> permuted;
    std::span<const int> labels = features.labels;
    if (options.permutation_seed) {
      permuted = features.labels;
      std::mt19937_64 rng(derive_seed(*options.permutation_seed, 0x9e7, r));
      std::shuffle(permuted.begin(), permuted.end(), rng);
      labels = permuted;
    }
    const Split s = draw_split(labels, split.train_fraction, repeat_seed(split.master_seed, r));
    std::vector<std::size_t> order = global_order;
    if (options.selection == SelectionMode::per_split)
      order = select_features_for_split(features.slopes, labels, s.train, max_p);
    else if (options.permutation_seed)
      order = select_top(fisher_scores(features.slopes, labels), max_p);
    for (std::size_t pi = 0; pi < np; ++pi) {
      const std::span<const std::size_t> chosen(order.data(), p_values[pi]);
      auto rec = run_repeat(features.slopes, labels, s, classifier, chosen, options.standardize);
      rec.repeat = r;
      slots[r * np + pi] = std::move(rec);
    }
  });

  std::vector<EvalReport> out;
  for (std::size_t pi = 0; pi < np; ++pi) {
    std::vector<RepeatRecord> records;
    records.reserve(repeats);
    for (std::size_t r = 0; r < repeats; ++r) records.push_back(std::move(slots[r * np + pi]));
    out.push_back(aggregate(classifier, options, p_values[pi], std::move(records)));
  }
  return out;
}

EvalReport evaluate(const FeatureMatrix& features, const ClassifierSpec& classifier, std::size_t p,
                    const SplitSpec& split, const EvalOptions& options) {
  const std::size_t ps[] = {p};
  return std::move(accuracy_vs_feature_count(features, classifier, ps, split, options).front());
}

void write_eval_csv(std::ostream& out, std::span<const EvalReport> reports) {
  out << "classifier,selection,standardized,p,test_mean,test_std,train_mean,train_std,n,redraws,"
         "nonconverged\n";
  for (const auto& r : reports) {
    out << r.classifier << ',' << selection_mode_name(r.selection) << ','
        << (r.standardized ? 1 : 0) << ',' << r.p << ',' << format_number(r.test.mean, 10) << ','
        << format_number(r.test.std, 10) << ',' << format_number(r.train.mean, 10) << ','
        << format_number(r.train.std, 10) << ',' << r.test.n << ',' << r.redraws << ','
        << r.nonconverged << '\n';
  }
}

void write_repeat_csv(std::ostream& out, std::span<const EvalReport> reports) {
  out << "classifier,selection,p,repeat,train_accuracy,test_accuracy,redraws,converged,features\n";
  for (const auto& r : reports) {
    for (const auto& rec : r.records) {
      out << r.classifier << ',' << selection_mode_name(r.selection) << ',' << r.p << ','
          << rec.repeat + 1 << ',' << format_number(rec.train_accuracy, 10) << ','
          << format_number(rec.test_accuracy, 10) << ',' << rec.redraws << ','
          << (rec.converged ? 1 : 0) << ',';
      for (std::size_t i = 0; i < rec.features.size(); ++i)
        out << (i ? ";" : "") << rec.features[i] + 1;
      out << '\n';
    }
  }
}

CorrelationMatrix feature_correlation(const FeatureMatrix& features,
                                      std::span<const std::size_t> selected) {
  const std::size_t n = features.samples();
  if (n < 2) throw EstimationError("correlation needs at least two samples");
  for (const auto c : selected)
    if (c >= features.features())
      throw ConfigError("feature " + std::to_string(c + 1) + " outside 1.." +
                        std::to_string(features.features()));

  const std::size_t k = selected.size();
  std::vector<Eigen::VectorXd> centered(k);
  std::vector<double> norms(k);
  for (std::size_t i = 0; i < k; ++i) {
    const auto col = features.slopes.col(static_cast<Eigen::Index>(selected[i]));
    centered[i] = col.array() - col.mean();
    norms[i] = centered[i].norm();
  }
  CorrelationMatrix m;
  m.features.assign(selected.begin(), selected.end());
  m.values.assign(k * k, std::nullopt);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (norms[i] == 0.0 || norms[j] == 0.0) continue;
      if (i == j) {
        m.values[i * k + j] = 1.0;
        continue;
      }
      const double r = centered[i].dot(centered[j]) / (norms[i] * norms[j]);
      m.values[i * k + j] = std::clamp(r, -1.0, 1.0);
    }
  }
  return m;
}

void write_correlation_csv(std::ostream& out, const CorrelationMatrix& matrix) {
  out << "window";
  for (const auto f : matrix.features) out << ",w" << (f + 1 < 10 ? "0" : "") << f + 1;
  out << '\n';
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    out << "w" << (matrix.features[i] + 1 < 10 ? "0" : "") << matrix.features[i] + 1;
    for (std::size_t j = 0; j < matrix.size(); ++j) {
      out << ',';
      if (const auto v = matrix.at(i, j)) out << format_number(*v, 10);
    }
    out << '\n';
  }
}

FeatureMatrix shuffle_labels(const FeatureMatrix& features, std::uint64_t seed) {
  FeatureMatrix out = features;
  std::mt19937_64 rng(seed);
  std::shuffle(out.labels.begin(), out.labels.end(), rng);
  return out;
}

}  // namespace wavescale
