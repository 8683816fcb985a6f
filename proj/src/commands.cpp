#include "wavescale/commands.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <ostream>

#include "wavescale/csv.hpp"
#include "wavescale/dataset.hpp"
#include "wavescale/errors.hpp"
#include "wavescale/parallel.hpp"
#include "wavescale/screening.hpp"

namespace wavescale {

namespace fs = std::filesystem;

namespace {

// Collects written files so a failed run can clean up after itself.
class OutputSet {
 public:
  explicit OutputSet(std::ostream& log) : log_(log) {}

  template <typename Fn>
  void write(const fs::path& path, Fn&& fn) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IngestionError("cannot open " + path.string() + " for writing");
    files_.push_back(path);
    fn(out);
    out.flush();
    if (!out) throw IngestionError("write to " + path.string() + " failed");
    log_ << "wrote " << path.string() << '\n';
  }

  void add(const fs::path& path) { files_.push_back(path); }

  void remove_all() noexcept {
    for (const auto& f : files_) {
      std::error_code ec;
      fs::remove(f, ec);
    }
    files_.clear();
  }

  const std::vector<fs::path>& files() const { return files_; }

 private:
  std::ostream& log_;
  std::vector<fs::path> files_;
};

void write_screening_csv(std::ostream& out, const std::vector<WindowScreen>& screens) {
  out << "window,fisher,u_statistic,z,p_value\n";
  for (const auto& s : screens)
    out << s.window << ',' << format_number(s.fisher, 10) << ','
        << format_number(s.rank_sum.u_statistic) << ',' << format_number(s.rank_sum.z, 10) << ','
        << format_number(s.rank_sum.p_value, 10) << '\n';
}

// Top-ranked windows with their index and m/z spans.
void write_window_report(std::ostream& out, const std::vector<std::size_t>& ranked,
                         const std::vector<WindowScreen>& screens,
                         const std::vector<WindowRange>& ranges) {
  out << "rank,window,first_index,last_index,mz_low,mz_high,fisher,p_value\n";
  for (std::size_t r = 0; r < ranked.size(); ++r) {
    const std::size_t w = ranked[r];
    const auto& range = ranges[w];
    out << r + 1 << ',' << range.window << ',' << range.first_index << ',' << range.last_index
        << ',' << (range.mz_low ? format_number(*range.mz_low, 10) : "") << ','
        << (range.mz_high ? format_number(*range.mz_high, 10) : "") << ','
        << format_number(screens[w].fisher, 10) << ','
        << format_number(screens[w].rank_sum.p_value, 10) << '\n';
  }
}

FeatureMatrix keep_columns(const FeatureMatrix& fm, const std::vector<std::size_t>& cols) {
  FeatureMatrix out = fm;
  out.slopes.resize(fm.slopes.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j)
    out.slopes.col(static_cast<Eigen::Index>(j)) = fm.slopes.col(static_cast<Eigen::Index>(cols[j]));
  out.hurst.resize(0, 0);
  out.grid.windows.clear();
  for (const auto c : cols)
    if (c < fm.grid.windows.size()) out.grid.windows.push_back(fm.grid.windows[c]);
  return out;
}

void extract_into(OutputSet& outputs, const SpectraDataset& dataset, const MethodConfig& method,
                  std::size_t window_length, std::size_t window_stride, int threads,
                  const fs::path& out_dir, FeatureMatrix* result, std::vector<WindowRange>* ranges) {
  const auto grid = make_windows(dataset.bins(), window_length, window_stride);
  auto fm = extract_features(dataset, method, grid, threads);
  auto wr = window_mz_ranges(grid, dataset.mz_values);
  outputs.write(out_dir / "features.csv", [&](std::ostream& o) { write_feature_csv(o, fm); });
  outputs.write(out_dir / "hurst.csv", [&](std::ostream& o) { write_feature_csv(o, fm, true); });
  outputs.write(out_dir / "windows.csv", [&](std::ostream& o) { write_window_metadata_csv(o, wr); });
  if (result) *result = std::move(fm);
  if (ranges) *ranges = std::move(wr);
}

void classify_into(OutputSet& outputs, FeatureMatrix fm, const ClassifySettings& s,
                   const fs::path& out_dir) {
  if (s.balance_seed) fm = balance_classes(fm, *s.balance_seed);
  if (s.features < 1 || s.features > fm.features())
    throw ConfigError("feature count " + std::to_string(s.features) + " outside 1.." +
                      std::to_string(fm.features()));

  EvalOptions opts;
  opts.standardize = s.standardize;
  opts.threads = s.threads;
  opts.keep_repeats = s.repeat_log;
  opts.permutation_seed = s.shuffle_seed;

  std::vector<EvalReport> reports;
  std::vector<EvalReport> curves;
  for (const auto& classifier : s.classifiers) {
    for (const auto mode : s.selections) {
      opts.selection = mode;
      reports.push_back(evaluate(fm, classifier, s.features, s.split, opts));
      if (s.curve) {
        SplitSpec curve_split = s.split;
        curve_split.repeats = s.curve_repeats;
        const auto ps = s.curve->values();
        EvalOptions curve_opts = opts;
        curve_opts.keep_repeats = false;
        for (auto& r : accuracy_vs_feature_count(fm, classifier, ps, curve_split, curve_opts))
          curves.push_back(std::move(r));
      }
    }
  }
  const auto top = select_top(fisher_scores(fm), s.features);

  outputs.write(out_dir / "accuracy.csv", [&](std::ostream& o) { write_eval_csv(o, reports); });
  if (s.curve)
    outputs.write(out_dir / "curve.csv", [&](std::ostream& o) { write_eval_csv(o, curves); });
  if (s.repeat_log)
    outputs.write(out_dir / "repeats.csv", [&](std::ostream& o) { write_repeat_csv(o, reports); });
  outputs.write(out_dir / "correlation.csv",
                [&](std::ostream& o) { write_correlation_csv(o, feature_correlation(fm, top)); });
  // top-p columns over all rows, for external classifiers
  outputs.write(out_dir / "selected_features.csv", [&](std::ostream& o) {
    auto sel = keep_columns(fm, top);
    o << "sample_id,label";
    for (const auto c : top) o << ",w" << (c + 1 < 10 ? "0" : "") << c + 1;
    o << '\n';
    for (std::size_t i = 0; i < sel.samples(); ++i) {
      o << sel.sample_ids[i] << ',' << sel.labels[i];
      for (std::size_t j = 0; j < top.size(); ++j)
        o << ',' << format_number(sel.slopes(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
      o << '\n';
    }
  });
}

template <typename Fn>
std::vector<fs::path> guarded(std::ostream& log, Fn&& fn) {
  OutputSet outputs(log);
  try {
    fn(outputs);
  } catch (...) {
    outputs.remove_all();
    throw;
  }
  return outputs.files();
}

}  // namespace

std::vector<fs::path> cmd_simulate(const SimulateOptions& options, std::ostream& log) {
  if (options.benchmark.replicates < 1)
    throw ConfigError("--reps must be at least 1, got " + std::to_string(options.benchmark.replicates));
  if (options.benchmark.hurst_grid.empty()) throw ConfigError("empty Hurst grid");
  for (const double h : options.benchmark.hurst_grid)
    if (!(h > 0.0 && h < 1.0)) throw ConfigError("Hurst values must lie in (0, 1), got " + format_number(h));
  const std::size_t n = options.benchmark.length;
  if (n < 8 || (n & (n - 1)) != 0)
    throw ConfigError("--n must be a power of two of at least 8, got " + std::to_string(n));
  // full depth for the spectra, one short of it for the best basis
  auto config = options.benchmark;
  const int depth = std::countr_zero(n);
  config.spectrum_depth = std::min(config.spectrum_depth, depth);
  config.jones_depth = std::min(config.jones_depth, depth - 1);
  return guarded(log, [&](OutputSet& out) {
    const auto report = run_estimator_benchmark(config);
    out.write(options.out, [&](std::ostream& o) { write_benchmark_csv(o, report); });
  });
}

std::vector<fs::path> cmd_extract(const ExtractOptions& options, std::ostream& log) {
  const auto dataset = load_dataset(options.data, options.labels);
  return guarded(log, [&](OutputSet& out) {
    extract_into(out, dataset, options.method, options.window_length, options.window_stride,
                 options.threads, options.out_dir, nullptr, nullptr);
  });
}

std::vector<fs::path> cmd_classify(const fs::path& features_csv, const ClassifySettings& settings,
                                   const fs::path& out_dir, std::ostream& log) {
  settings.split.validate();
  auto fm = read_feature_csv(features_csv);
  return guarded(log, [&](OutputSet& out) { classify_into(out, std::move(fm), settings, out_dir); });
}

std::vector<fs::path> cmd_pipeline(const RunConfig& config, std::ostream& log) {
  return guarded(log, [&](OutputSet& out) {
    const auto dataset = load_dataset(config.data, config.labels);
    FeatureMatrix fm;
    std::vector<WindowRange> ranges;
    extract_into(out, dataset, config.method, config.window_length, config.window_stride,
                 config.threads, config.output, &fm, &ranges);

    ClassifySettings s;
    s.classifiers = config.classifiers;
    s.selections = config.selections;
    s.standardize = config.standardize;
    s.features = config.features;
    s.split = config.split;
    s.curve = config.curve;
    s.curve_repeats = config.curve_repeats;
    s.balance_seed = config.balance_seed;
    s.repeat_log = config.repeat_log;
    s.threads = config.threads;

    // screening and the window report describe the same rows the classifiers see
    const FeatureMatrix screened = config.balance_seed ? balance_classes(fm, *config.balance_seed) : fm;
    const auto screens = screen_windows(screened);
    out.write(config.output / "screening.csv", [&](std::ostream& o) { write_screening_csv(o, screens); });

    classify_into(out, fm, s, config.output);

    const auto ranked = select_top(fisher_scores(screened), std::min(config.features, screened.features()));
    out.write(config.output / "window_report.csv",
              [&](std::ostream& o) { write_window_report(o, ranked, screens, ranges); });
  });
}

std::vector<fs::path> cmd_synth(const SynthOptions& options, std::ostream& log) {
  const auto dataset = make_synthetic_dataset(options.spec, options.threads);
  return guarded(log, [&](OutputSet& out) {
    fs::create_directories(options.out_dir);
    if (options.per_sample_files) {
      const fs::path dir = options.out_dir / "spectra";
      out.add(dir / "manifest.csv");
      for (const auto& id : dataset.sample_ids) out.add(dir / (id + ".csv"));
      write_sample_directory(dataset, dir);
      log << "wrote " << dir.string() << '\n';
    } else {
      out.add(options.out_dir / "data.csv");
      write_matrix_csv(dataset, options.out_dir / "data.csv");
      log << "wrote " << (options.out_dir / "data.csv").string() << '\n';
    }
    out.add(options.out_dir / "labels.csv");
    write_labels_csv(dataset, options.out_dir / "labels.csv");
    log << "wrote " << (options.out_dir / "labels.csv").string() << '\n';
  });
}

}  // namespace wavescale
