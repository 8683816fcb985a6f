#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wavescale/classify.hpp"
#include "wavescale/features.hpp"
#include "wavescale/parallel.hpp"

namespace wavescale {

enum class ClassifierKind { logistic, knn };

struct ClassifierSpec {
  ClassifierKind kind = ClassifierKind::logistic;
  LogisticOptions logistic;
  int k = 5;
};

/// "logistic" or "knn"; also accepts "knn:K" to set k.
ClassifierSpec parse_classifier(std::string_view text);
std::string classifier_name(const ClassifierSpec& spec);

enum class SelectionMode { per_split, global };
SelectionMode parse_selection_mode(std::string_view name);
std::string_view selection_mode_name(SelectionMode mode);

struct SplitSpec {
  double train_fraction = 0.67;
  int repeats = 10000;
  std::uint64_t master_seed = 0;

  /// Throws ConfigError unless 0 < train_fraction < 1 and repeats >= 1.
  void validate() const;
};

struct EvalOptions {
  SelectionMode selection = SelectionMode::per_split;
  bool standardize = true;
  int threads = 1;
  bool keep_repeats = false;
  // When set, every repeat first permutes the labels with a seed derived from
  // this value and the repeat index (permutation null / chance level).
  std::optional<std::uint64_t> permutation_seed;
};

struct Split {
  std::vector<std::size_t> train;  // ascending
  std::vector<std::size_t> test;   // ascending
  int redraws = 0;
};

/// floor(train_fraction * n) rows drawn uniformly for training, the rest for
/// testing. Draws whose training part has fewer than two rows of either class
/// are redrawn from a derived seed and counted. Throws EstimationError after
/// 1000 failed draws.
Split draw_split(std::span<const int> labels, double train_fraction, std::uint64_t seed);

/// Seed of repeat `repeat`; shared across p values and classifiers so that
/// curves compare like with like.
std::uint64_t repeat_seed(std::uint64_t master_seed, std::size_t repeat);

/// Top-p Fisher features computed from the training rows only.
std::vector<std::size_t> select_features_for_split(const RowMatrix& values,
                                                   std::span<const int> labels,
                                                   std::span<const std::size_t> train_rows,
                                                   std::size_t p);

struct RepeatRecord {
  std::size_t repeat = 0;
  double train_accuracy = 0.0;  // percent
  double test_accuracy = 0.0;   // percent
  int redraws = 0;
  bool converged = true;
  std::vector<std::size_t> features;  // 0-based columns used
};

struct EvalReport {
  std::string classifier;
  SelectionMode selection = SelectionMode::per_split;
  bool standardized = true;
  std::size_t p = 0;
  MeanStd test;   // percent
  MeanStd train;  // percent
  int redraws = 0;
  int nonconverged = 0;
  std::vector<RepeatRecord> records;  // filled when keep_repeats is set
};

/// One holdout repeat on an already drawn split.
RepeatRecord run_repeat(const RowMatrix& values, std::span<const int> labels, const Split& split,
                        const ClassifierSpec& classifier, std::span<const std::size_t> features,
                        bool standardize);

/// Repeated random-split evaluation with p features (Fisher ranked per split
/// or once on all rows, per `options.selection`).
EvalReport evaluate(const FeatureMatrix& features, const ClassifierSpec& classifier, std::size_t p,
                    const SplitSpec& split, const EvalOptions& options = {});

std::vector<EvalReport> accuracy_vs_feature_count(const FeatureMatrix& features,
                                                  const ClassifierSpec& classifier,
                                                  std::span<const std::size_t> p_values,
                                                  const SplitSpec& split,
                                                  const EvalOptions& options = {});

/// Header classifier,selection,standardized,p,test_mean,test_std,train_mean,
/// train_std,n,redraws,nonconverged.
void write_eval_csv(std::ostream& out, std::span<const EvalReport> reports);

/// Header classifier,selection,p,repeat,train_accuracy,test_accuracy,redraws,
/// converged,features (1-based windows separated by ';').
void write_repeat_csv(std::ostream& out, std::span<const EvalReport> reports);

struct CorrelationMatrix {
  std::vector<std::size_t> features;           // 0-based columns
  std::vector<std::optional<double>> values;   // row-major, size^2
  std::size_t size() const { return features.size(); }
  std::optional<double> at(std::size_t i, std::size_t j) const { return values[i * size() + j]; }
};

/// Pearson correlations among the selected columns. Entries involving a
/// zero-variance column are missing. Throws EstimationError with fewer than
/// two samples.
CorrelationMatrix feature_correlation(const FeatureMatrix& features,
                                      std::span<const std::size_t> selected);

/// Square CSV with a leading "window" column; missing entries are empty.
void write_correlation_csv(std::ostream& out, const CorrelationMatrix& matrix);

/// Permutes labels with a seeded shuffle.
FeatureMatrix shuffle_labels(const FeatureMatrix& features, std::uint64_t seed);

}  // namespace wavescale
