#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "wavescale/evaluation.hpp"
#include "wavescale/features.hpp"

namespace wavescale {

struct IndexRange {
  std::size_t first = 1;
  std::size_t last = 1;
  std::vector<std::size_t> values() const;
};

/// Settings of a full pipeline run. See tools/pipeline.example.yaml for the file
/// layout; relative paths are resolved against the config file directory.
struct RunConfig {
  std::filesystem::path data;
  std::filesystem::path labels;
  std::filesystem::path output;

  MethodConfig method;
  std::string level_source = "nci-8-7-02";  // preset name, or "custom"
  std::size_t window_length = 1024;
  std::size_t window_stride = 500;

  std::optional<std::uint64_t> balance_seed;  // unset: no balancing
  std::vector<ClassifierSpec> classifiers{ClassifierSpec{}, parse_classifier("knn")};
  std::vector<SelectionMode> selections{SelectionMode::per_split};
  bool standardize = true;
  std::size_t features = 10;
  SplitSpec split;
  std::optional<IndexRange> curve;
  int curve_repeats = 1000;
  bool repeat_log = false;
  int threads = 0;
};

/// Reads and validates a YAML run configuration. Structural problems (unknown
/// keys, missing method, bad values, referenced paths that do not exist) are
/// ConfigErrors.
RunConfig load_run_config(const std::filesystem::path& path);

/// Same, from YAML text; `base_dir` anchors relative paths.
RunConfig parse_run_config(const std::string& yaml_text, const std::filesystem::path& base_dir);

/// "a..b" or a single integer, 1-based and inclusive.
IndexRange parse_index_range(const std::string& text);

/// "a..b" (step 0.1), "a..b:step" or a comma list.
std::vector<double> parse_real_grid(const std::string& text);

}  // namespace wavescale
