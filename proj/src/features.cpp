#include "wavescale/features.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>

#include "wavescale/csv.hpp"
#include "wavescale/errors.hpp"
#include "wavescale/parallel.hpp"
#include "wavescale/transform.hpp"

namespace wavescale {

WindowGrid make_windows(std::size_t bins, std::size_t window_len, std::size_t stride) {
  if (window_len == 0) throw ConfigError("window length must be positive");
  if (stride == 0) throw ConfigError("window stride must be positive");
  if (window_len > bins)
    throw ConfigError("window length " + std::to_string(window_len) + " exceeds spectrum length " +
                      std::to_string(bins));
  WindowGrid grid{bins, window_len, stride, {}};
  const std::size_t count = (bins - window_len) / stride + 1;
  for (std::size_t w = 0; w < count; ++w) grid.windows.push_back({w * stride, w * stride + window_len});
  return grid;
}

LevelPreset parse_level_preset(std::string_view name) {
  if (name == "all") return LevelPreset::all;
  if (name == "nci-4-3-02") return LevelPreset::nci_4_3_02;
  if (name == "nci-8-7-02") return LevelPreset::nci_8_7_02;
  throw ConfigError("unknown level preset '" + std::string(name) +
                    "' (expected all, nci-4-3-02 or nci-8-7-02)");
}

std::string_view level_preset_name(LevelPreset preset) {
  switch (preset) {
    case LevelPreset::all: return "all";
    case LevelPreset::nci_4_3_02: return "nci-4-3-02";
    case LevelPreset::nci_8_7_02: return "nci-8-7-02";
  }
  return "unknown";
}

std::vector<LevelRule> preset_rules(LevelPreset preset, Method method) {
  // Published numbering: levels a-b -> tree levels a-1 .. b-1.
  auto rule = [](std::size_t w0, std::size_t w1, int a, int b) {
    return LevelRule{w0, w1, tree_level_from_published(a), tree_level_from_published(b)};
  };
  if (preset == LevelPreset::all || method == Method::jones) return {};
  if (preset == LevelPreset::nci_4_3_02) {
    if (method == Method::dwt) return {rule(1, 11, 7, 10), rule(12, 29, 6, 9)};
    return {rule(1, 10, 7, 10), rule(11, 29, 6, 9)};
  }
  if (method == Method::dwt) return {rule(1, 11, 8, 10), rule(12, 29, 7, 10)};
  return {rule(1, 15, 8, 10), rule(16, 29, 6, 10)};
}

MethodConfig MethodConfig::defaults(Method method) {
  MethodConfig c;
  c.method = method;
  if (method == Method::jones) {
    c.wavelet = WaveletFamily::symmlet4;
    c.depth = 9;
  }
  return c;
}

std::vector<int> MethodConfig::levels_for_window(std::size_t window, const PacketTree& tree) const {
  const std::size_t w = window + 1;
  for (const auto& rule : level_rules) {
    if (w < rule.first_window || w > rule.last_window) continue;
    std::vector<int> levels;
    for (int j = rule.last_level; j >= rule.first_level; --j) {
      if (j >= tree.signal_level() || j < tree.bottom_level())
        throw ConfigError("window " + std::to_string(w) + ": level " + std::to_string(j) +
                          " is not a decomposed detail level");
      levels.push_back(j);
    }
    return levels;
  }
  return detail_levels(tree);
}

ScalingDescriptor describe_window(std::span<const double> window, const MethodConfig& config,
                                  const FilterPair& filter, std::size_t window_index) {
  const auto tree = wpd_full(window, filter, config.depth);
  switch (config.method) {
    case Method::dwt: return estimate_dwt(tree, config.levels_for_window(window_index, tree));
    case Method::wang:
      return estimate_wang(tree, config.levels_for_window(window_index, tree), config.wang_energy);
    case Method::jones: return hurst_jones(tree);
  }
  throw ConfigError("unknown method");
}

FeatureMatrix extract_features(const SpectraDataset& dataset, const MethodConfig& config,
                               const WindowGrid& grid, int threads) {
  if (!is_power_of_two(grid.window_len))
    throw ConfigError("window length " + std::to_string(grid.window_len) +
                      " must be a power of two");
  if (config.depth < 1 || config.depth > dyadic_level(grid.window_len))
    throw ConfigError("depth " + std::to_string(config.depth) + " does not fit windows of " +
                      std::to_string(grid.window_len));
  if (grid.bins != dataset.bins())
    throw ConfigError("window grid built for " + std::to_string(grid.bins) +
                      " bins but dataset has " + std::to_string(dataset.bins()));

  const FilterPair filter = make_filter(config.wavelet);
  const std::size_t samples = dataset.samples();
  const std::size_t windows = grid.size();

  FeatureMatrix out;
  out.method = config.method;
  out.labels = dataset.labels;
  out.sample_ids = dataset.sample_ids;
  out.grid = grid;
  out.slopes.resize(static_cast<Eigen::Index>(samples), static_cast<Eigen::Index>(windows));
  out.hurst.resize(static_cast<Eigen::Index>(samples), static_cast<Eigen::Index>(windows));

  parallel_for(samples * windows, threads, [&](std::size_t task) {
    const std::size_t s = task / windows;
    const std::size_t w = task % windows;
    const auto row = dataset.intensities.row(static_cast<Eigen::Index>(s));
    std::span<const double> window(row.data() + grid.windows[w].start, grid.window_len);
    try {
      const auto d = describe_window(window, config, filter, w);
      out.slopes(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(w)) = d.slope;
      out.hurst(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(w)) = d.hurst;
    } catch (const EstimationError& e) {
      throw EstimationError("sample '" + dataset.sample_ids[s] + "', window " +
                            std::to_string(w + 1) + ": " + e.what());
    }
  });
  return out;
}

namespace {

std::string window_column(std::size_t w) {
  std::string n = std::to_string(w + 1);
  return "w" + (n.size() < 2 ? "0" + n : n);
}

}  // namespace

void write_feature_csv(std::ostream& out, const FeatureMatrix& features, bool hurst) {
  const RowMatrix& values = hurst ? features.hurst : features.slopes;
  out << "sample_id,label";
  for (std::size_t w = 0; w < features.features(); ++w) out << ',' << window_column(w);
  out << '\n';
  for (std::size_t s = 0; s < features.samples(); ++s) {
    out << features.sample_ids[s] << ',' << features.labels[s];
    for (std::size_t w = 0; w < features.features(); ++w)
      out << ',' << format_number(values(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(w)));
    out << '\n';
  }
}

FeatureMatrix read_feature_csv(const std::filesystem::path& path) {
  const auto table = read_csv(path);
  if (table.header.size() < 3 || table.header[0] != "sample_id" || table.header[1] != "label")
    throw IngestionError(path.string() + ": header must be sample_id,label,w01,...");
  const std::size_t windows = table.header.size() - 2;
  FeatureMatrix out;
  out.slopes.resize(static_cast<Eigen::Index>(table.rows.size()), static_cast<Eigen::Index>(windows));
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::string at = path.string() + ":" + std::to_string(table.line_numbers[r]);
    if (row.size() != table.header.size())
      throw IngestionError(at + ": expected " + std::to_string(table.header.size()) + " fields");
    out.sample_ids.push_back(row[0]);
    out.labels.push_back(parse_label(row[1], at));
    for (std::size_t w = 0; w < windows; ++w)
      out.slopes(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(w)) =
          parse_double(row[w + 2], at + " column " + table.header[w + 2]);
  }
  out.grid.windows.resize(windows);
  return out;
}

FeatureMatrix select_rows(const FeatureMatrix& features, std::span<const std::size_t> rows) {
  FeatureMatrix out;
  out.method = features.method;
  out.grid = features.grid;
  const auto n = static_cast<Eigen::Index>(rows.size());
  out.slopes.resize(n, features.slopes.cols());
  if (features.hurst.size() > 0) out.hurst.resize(n, features.hurst.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto src = static_cast<Eigen::Index>(rows[i]);
    out.slopes.row(static_cast<Eigen::Index>(i)) = features.slopes.row(src);
    if (features.hurst.size() > 0) out.hurst.row(static_cast<Eigen::Index>(i)) = features.hurst.row(src);
    out.labels.push_back(features.labels[rows[i]]);
    out.sample_ids.push_back(features.sample_ids[rows[i]]);
  }
  return out;
}

std::vector<double> fisher_scores(const RowMatrix& values, std::span<const int> labels,
                                  std::span<const std::size_t> rows) {
  std::vector<std::size_t> cases, controls;
  for (std::size_t r : rows) (labels[r] == kCase ? cases : controls).push_back(r);
  if (cases.size() < 2 || controls.size() < 2)
    throw EstimationError("Fisher criterion needs at least two samples per class (cases: " +
                          std::to_string(cases.size()) + ", controls: " +
                          std::to_string(controls.size()) + ")");

  auto moments = [&](const std::vector<std::size_t>& group, Eigen::Index col) {
    double mean = 0.0;
    for (std::size_t r : group) mean += values(static_cast<Eigen::Index>(r), col);
    mean /= static_cast<double>(group.size());
    double ss = 0.0;
    for (std::size_t r : group) {
      const double d = values(static_cast<Eigen::Index>(r), col) - mean;
      ss += d * d;
    }
    return std::pair{mean, ss / static_cast<double>(group.size() - 1)};
  };

  std::vector<double> scores(static_cast<std::size_t>(values.cols()));
  for (Eigen::Index c = 0; c < values.cols(); ++c) {
    const auto [mean_case, var_case] = moments(cases, c);
    const auto [mean_control, var_control] = moments(controls, c);
    const double numerator = (mean_case - mean_control) * (mean_case - mean_control);
    const double denominator = var_case + var_control;
    double f = 0.0;
    if (denominator > 0.0)
      f = numerator / denominator;
    else if (numerator > 0.0)
      f = std::numeric_limits<double>::infinity();
    scores[static_cast<std::size_t>(c)] = f;
  }
  return scores;
}

std::vector<double> fisher_scores(const RowMatrix& values, std::span<const int> labels) {
  std::vector<std::size_t> rows(static_cast<std::size_t>(values.rows()));
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  return fisher_scores(values, labels, rows);
}

std::vector<double> fisher_scores(const FeatureMatrix& features) {
  return fisher_scores(features.slopes, features.labels);
}

std::vector<std::size_t> select_top(std::span<const double> scores, std::size_t p) {
  if (p < 1 || p > scores.size())
    throw ConfigError("feature count " + std::to_string(p) + " outside [1, " +
                      std::to_string(scores.size()) + "]");
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  order.resize(p);
  return order;
}

std::vector<std::size_t> balanced_indices(std::span<const int> labels, std::uint64_t seed) {
  std::vector<std::size_t> cases, controls;
  for (std::size_t i = 0; i < labels.size(); ++i) (labels[i] == kCase ? cases : controls).push_back(i);
  auto& larger = cases.size() > controls.size() ? cases : controls;
  const std::size_t target = std::min(cases.size(), controls.size());

  std::mt19937_64 rng(seed);
  std::shuffle(larger.begin(), larger.end(), rng);
  larger.resize(target);

  std::vector<std::size_t> keep;
  keep.insert(keep.end(), cases.begin(), cases.end());
  keep.insert(keep.end(), controls.begin(), controls.end());
  std::sort(keep.begin(), keep.end());
  return keep;
}

SpectraDataset balance_classes(const SpectraDataset& dataset, std::uint64_t seed) {
  return select_rows(dataset, balanced_indices(dataset.labels, seed));
}

FeatureMatrix balance_classes(const FeatureMatrix& features, std::uint64_t seed) {
  return select_rows(features, balanced_indices(features.labels, seed));
}

std::vector<WindowRange> window_mz_ranges(const WindowGrid& grid, std::span<const double> mz_values) {
  if (!mz_values.empty()) {
    if (mz_values.size() != grid.bins)
      throw IngestionError("m/z vector has " + std::to_string(mz_values.size()) +
                           " values but the grid covers " + std::to_string(grid.bins) + " bins");
    for (std::size_t i = 1; i < mz_values.size(); ++i)
      if (mz_values[i] < mz_values[i - 1])
        throw IngestionError("m/z values are not sorted ascending at index " + std::to_string(i + 1));
  }
  std::vector<WindowRange> out;
  for (std::size_t w = 0; w < grid.size(); ++w) {
    const auto& win = grid.windows[w];
    WindowRange r{w + 1, win.start + 1, win.end, std::nullopt, std::nullopt};
    if (!mz_values.empty()) {
      r.mz_low = mz_values[win.start];
      r.mz_high = mz_values[win.end - 1];
    }
    out.push_back(r);
  }
  return out;
}

void write_window_metadata_csv(std::ostream& out, std::span<const WindowRange> ranges) {
  out << "window,first_index,last_index,mz_low,mz_high\n";
  for (const auto& r : ranges) {
    out << r.window << ',' << r.first_index << ',' << r.last_index << ','
        << (r.mz_low ? format_number(*r.mz_low) : "") << ','
        << (r.mz_high ? format_number(*r.mz_high) : "") << '\n';
  }
}

}  // namespace wavescale
