#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "wavescale/dataset.hpp"
#include "wavescale/estimators.hpp"
#include "wavescale/filters.hpp"
#include "wavescale/types.hpp"

namespace wavescale {

struct Window {
  std::size_t start = 0;  // 0-based, inclusive
  std::size_t end = 0;    // exclusive
};

struct WindowGrid {
  std::size_t bins = 0;
  std::size_t window_len = 1024;
  std::size_t stride = 500;
  std::vector<Window> windows;

  std::size_t size() const { return windows.size(); }
};

/// floor((bins - window_len) / stride) + 1 windows; window w (0-based) starts
/// at w * stride.
WindowGrid make_windows(std::size_t bins, std::size_t window_len = 1024, std::size_t stride = 500);

/// Regression levels for a block of windows. Windows are 1-based and levels
/// are tree levels j, both ranges inclusive.
struct LevelRule {
  std::size_t first_window = 1;
  std::size_t last_window = 1;
  int first_level = 0;
  int last_level = 0;
};

// Level choices for real spectra. The nci presets reproduce the per-window
// level blocks used for the two NCI ovarian datasets; `all` regresses on every
// detail level.
enum class LevelPreset { all, nci_4_3_02, nci_8_7_02 };

LevelPreset parse_level_preset(std::string_view name);
std::string_view level_preset_name(LevelPreset preset);

/// Published level numbers count detail levels 1..J with J the finest; this
/// maps such a number to the tree level j.
constexpr int tree_level_from_published(int number) { return number - 1; }

std::vector<LevelRule> preset_rules(LevelPreset preset, Method method);

struct MethodConfig {
  Method method = Method::wang;
  WaveletFamily wavelet = WaveletFamily::haar;
  int depth = 10;
  std::vector<LevelRule> level_rules;  // windows not covered use every detail level
  WangEnergy wang_energy = WangEnergy::node_mean;

  /// Haar with 10 levels for dwt/wang, symmlet-4 with 9 levels for jones.
  static MethodConfig defaults(Method method);

  /// Regression levels (finest first) for 0-based window `window`.
  std::vector<int> levels_for_window(std::size_t window, const PacketTree& tree) const;
};

/// Slopes (the classifier features) and the matching Hurst estimates.
struct FeatureMatrix {
  Method method = Method::wang;
  RowMatrix slopes;  // samples x windows
  RowMatrix hurst;   // same shape; empty when read back from a slope-only file
  std::vector<int> labels;
  std::vector<std::string> sample_ids;
  WindowGrid grid;

  std::size_t samples() const { return static_cast<std::size_t>(slopes.rows()); }
  std::size_t features() const { return static_cast<std::size_t>(slopes.cols()); }
};

/// Descriptor of a single window of samples.
ScalingDescriptor describe_window(std::span<const double> window, const MethodConfig& config,
                                  const FilterPair& filter, std::size_t window_index);

/// Runs the configured decomposition and estimator on every (sample, window).
/// A failed estimate aborts with an EstimationError naming the sample and the
/// 1-based window. Results do not depend on `threads`.
FeatureMatrix extract_features(const SpectraDataset& dataset, const MethodConfig& config,
                               const WindowGrid& grid, int threads = 1);

/// Header sample_id,label,w01..wW; label is 1 for cases and 0 for controls.
void write_feature_csv(std::ostream& out, const FeatureMatrix& features, bool hurst = false);
FeatureMatrix read_feature_csv(const std::filesystem::path& path);

FeatureMatrix select_rows(const FeatureMatrix& features, std::span<const std::size_t> rows);

/// Fisher criterion (mu_case - mu_control)^2 / (var_case + var_control) per
/// column, with sample variances. A zero denominator gives +inf when the means
/// differ and 0 when they do not. Throws EstimationError unless each class has
/// at least two rows.
std::vector<double> fisher_scores(const RowMatrix& values, std::span<const int> labels,
                                  std::span<const std::size_t> rows);
std::vector<double> fisher_scores(const RowMatrix& values, std::span<const int> labels);
std::vector<double> fisher_scores(const FeatureMatrix& features);

/// Indices of the p largest scores, best first; ties go to the lower index.
std::vector<std::size_t> select_top(std::span<const double> scores, std::size_t p);

/// Keeps every row of the smaller class and a uniform random subset (without
/// replacement, seeded) of the larger class of the same size. Returned rows
/// are in their original order.
std::vector<std::size_t> balanced_indices(std::span<const int> labels, std::uint64_t seed);
SpectraDataset balance_classes(const SpectraDataset& dataset, std::uint64_t seed);
FeatureMatrix balance_classes(const FeatureMatrix& features, std::uint64_t seed);

struct WindowRange {
  std::size_t window = 0;       // 1-based
  std::size_t first_index = 0;  // 1-based, inclusive
  std::size_t last_index = 0;   // 1-based, inclusive
  std::optional<double> mz_low;
  std::optional<double> mz_high;
};

/// Index range and m/z span of every window. `mz_values` may be empty; when
/// present it must be sorted ascending (IngestionError otherwise).
std::vector<WindowRange> window_mz_ranges(const WindowGrid& grid, std::span<const double> mz_values);

/// Header window,first_index,last_index,mz_low,mz_high.
void write_window_metadata_csv(std::ostream& out, std::span<const WindowRange> ranges);

}  // namespace wavescale
