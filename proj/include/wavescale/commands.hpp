#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "wavescale/benchmark.hpp"
#include "wavescale/config.hpp"
#include "wavescale/synthetic.hpp"

namespace wavescale {

struct SimulateOptions {
  BenchmarkConfig benchmark;
  std::filesystem::path out = "table1_reproduction.csv";
};

struct ExtractOptions {
  std::filesystem::path data;
  std::filesystem::path labels;
  std::filesystem::path out_dir = ".";
  MethodConfig method;
  std::size_t window_length = 1024;
  std::size_t window_stride = 500;
  int threads = 0;
};

struct ClassifySettings {
  std::vector<ClassifierSpec> classifiers{ClassifierSpec{}, parse_classifier("knn")};
  std::vector<SelectionMode> selections{SelectionMode::per_split};
  bool standardize = true;
  std::size_t features = 10;
  SplitSpec split;
  std::optional<IndexRange> curve;
  int curve_repeats = 1000;
  std::optional<std::uint64_t> balance_seed;
  std::optional<std::uint64_t> shuffle_seed;  // fresh label permutation per repeat
  bool repeat_log = false;
  int threads = 0;
};

struct SynthOptions {
  SyntheticSpec spec;
  std::filesystem::path out_dir = "synthetic";
  bool per_sample_files = false;
  int threads = 0;
};

// Each command returns the files it wrote. `log` receives one line per file.
std::vector<std::filesystem::path> cmd_simulate(const SimulateOptions& options, std::ostream& log);

/// Writes features.csv (slopes), hurst.csv and windows.csv into out_dir.
std::vector<std::filesystem::path> cmd_extract(const ExtractOptions& options, std::ostream& log);

/// Writes accuracy.csv, correlation.csv, selected_features.csv and, when
/// requested, curve.csv and repeats.csv into out_dir.
std::vector<std::filesystem::path> cmd_classify(const std::filesystem::path& features_csv,
                                                const ClassifySettings& settings,
                                                const std::filesystem::path& out_dir,
                                                std::ostream& log);

/// Extraction, screening, classification and the window report in one run.
/// On failure every file written so far is removed before rethrowing.
std::vector<std::filesystem::path> cmd_pipeline(const RunConfig& config, std::ostream& log);

/// Writes a synthetic two-class dataset (data.csv or a per-sample directory,
/// plus labels.csv).
std::vector<std::filesystem::path> cmd_synth(const SynthOptions& options, std::ostream& log);

}  // namespace wavescale
