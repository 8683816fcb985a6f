#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wavescale/commands.hpp"
#include "wavescale/errors.hpp"
#include "wavescale/log.hpp"

namespace ws = wavescale;

namespace {

std::vector<ws::Method> parse_methods(const std::string& text) {
  std::vector<ws::Method> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    out.push_back(ws::parse_method(item));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

ws::WangEnergy parse_energy(const std::string& text) {
  if (text == "node-mean") return ws::WangEnergy::node_mean;
  if (text == "node-sum") return ws::WangEnergy::node_sum;
  throw ws::ConfigError("--wang-energy must be node-mean or node-sum");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wavelet scaling descriptors: simulation, feature extraction and classification"};
  app.require_subcommand(1);
  bool quiet = false;
  app.add_flag("-q,--quiet", quiet, "Suppress warnings");

  // simulate
  auto* sim = app.add_subcommand("simulate", "Monte-Carlo benchmark of the three Hurst estimators on exact fBm");
  std::string sim_h = "0.1..0.9";
  std::string sim_methods = "dwt,wang,jones";
  std::string sim_energy = "node-mean";
  ws::SimulateOptions sim_opts;
  sim->set_help_flag("--help", "Print this help message and exit");
  sim->add_option("--h", sim_h, "Hurst grid: a..b[:step], or a comma list")->capture_default_str();
  sim->add_option("--reps", sim_opts.benchmark.replicates, "Replicates per Hurst value")->capture_default_str();
  sim->add_option("--n", sim_opts.benchmark.length, "Signal length (power of two)")->capture_default_str();
  sim->add_option("--seed", sim_opts.benchmark.master_seed, "Master seed")->capture_default_str();
  sim->add_option("--methods", sim_methods, "Comma list of dwt, wang, jones")->capture_default_str();
  sim->add_option("--wang-energy", sim_energy, "node-mean or node-sum")->capture_default_str();
  sim->add_option("--out", sim_opts.out, "Output CSV")->capture_default_str();
  sim->add_option("--threads", sim_opts.benchmark.threads, "Worker threads (0: WAVESCALE_THREADS or 1)");

  // extract
  auto* ext = app.add_subcommand("extract", "Rolling-window slope features from spectra");
  ws::ExtractOptions ext_opts;
  std::string ext_method, ext_wavelet, ext_levels = "nci-8-7-02", ext_energy = "node-mean";
  int ext_depth = 0;
  ext->add_option("--data", ext_opts.data, "Matrix CSV or directory with manifest.csv")->required();
  ext->add_option("--labels", ext_opts.labels, "CSV with sample_id,label")->required();
  ext->add_option("--method", ext_method, "dwt, wang or jones")->required();
  ext->add_option("--wavelet", ext_wavelet, "haar or symmlet4 (method default if omitted)");
  ext->add_option("--depth", ext_depth, "Decomposition depth (method default if omitted)");
  ext->add_option("--levels", ext_levels, "Level preset: all, nci-4-3-02, nci-8-7-02")->capture_default_str();
  ext->add_option("--window", ext_opts.window_length, "Window length")->capture_default_str();
  ext->add_option("--stride", ext_opts.window_stride, "Window stride")->capture_default_str();
  ext->add_option("--wang-energy", ext_energy, "node-mean or node-sum")->capture_default_str();
  ext->add_option("--out", ext_opts.out_dir, "Output directory")->capture_default_str();
  ext->add_option("--threads", ext_opts.threads, "Worker threads (0: WAVESCALE_THREADS or 1)");

  // classify
  auto* cls = app.add_subcommand("classify", "Repeated holdout evaluation on a feature CSV");
  ws::ClassifySettings cls_opts;
  std::string cls_features, cls_curve;
  std::vector<std::string> cls_classifiers{"logistic", "knn"}, cls_selection{"per-split"};
  std::uint64_t balance_seed = 0, shuffle_seed = 0;
  bool no_standardize = false;
  std::string cls_out = "results";
  cls->add_option("--features", cls_features, "Feature CSV written by extract")->required();
  cls->add_option("--p", cls_opts.features, "Number of Fisher-ranked features")->capture_default_str();
  cls->add_option("--repeats", cls_opts.split.repeats, "Random splits")->capture_default_str();
  cls->add_option("--train-fraction", cls_opts.split.train_fraction, "Training fraction")->capture_default_str();
  cls->add_option("--seed", cls_opts.split.master_seed, "Split master seed")->capture_default_str();
  cls->add_option("--classifier", cls_classifiers, "logistic, knn or knn:K (repeatable)")->capture_default_str();
  cls->add_option("--selection", cls_selection, "per-split or global (repeatable)")->capture_default_str();
  cls->add_option("--C", cls_opts.classifiers.front().logistic.C, "Inverse L2 strength for logistic regression");
  cls->add_flag("--no-standardize", no_standardize, "Use raw slopes");
  cls->add_option("--curve", cls_curve, "Feature-count range for the accuracy curve, e.g. 1..29");
  cls->add_option("--curve-repeats", cls_opts.curve_repeats, "Splits per curve point")->capture_default_str();
  auto* bal = cls->add_option("--balance-seed", balance_seed, "Subsample the larger class to the smaller one");
  auto* shuf = cls->add_option("--shuffle-labels", shuffle_seed, "Permute labels in every repeat (chance level)");
  cls->add_flag("--repeat-log", cls_opts.repeat_log, "Also write per-repeat records");
  cls->add_option("--out", cls_out, "Output directory")->capture_default_str();
  cls->add_option("--threads", cls_opts.threads, "Worker threads (0: WAVESCALE_THREADS or 1)");

  // pipeline
  auto* pipe = app.add_subcommand("pipeline", "Full run from a YAML config");
  std::string pipe_config;
  int pipe_threads = -1;
  pipe->add_option("config", pipe_config, "YAML run configuration")->required();
  pipe->add_option("--threads", pipe_threads, "Override the config's thread count");

  // synth
  auto* syn = app.add_subcommand("synth", "Write a synthetic two-class fBm dataset");
  ws::SynthOptions syn_opts;
  syn->add_option("--out", syn_opts.out_dir, "Output directory")->capture_default_str();
  syn->add_option("--controls", syn_opts.spec.controls, "Control samples")->capture_default_str();
  syn->add_option("--cases", syn_opts.spec.cases, "Case samples")->capture_default_str();
  syn->add_option("--bins", syn_opts.spec.bins, "Points per spectrum")->capture_default_str();
  syn->add_option("--h-control", syn_opts.spec.control_hurst, "Hurst exponent of controls")->capture_default_str();
  syn->add_option("--h-case", syn_opts.spec.case_hurst, "Hurst exponent of cases")->capture_default_str();
  syn->add_option("--seed", syn_opts.spec.seed, "Seed")->capture_default_str();
  syn->add_flag("--per-sample", syn_opts.per_sample_files, "Write manifest plus one file per sample");
  syn->add_option("--threads", syn_opts.threads, "Worker threads (0: WAVESCALE_THREADS or 1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(ws::ExitCode::usage);
  }
  ws::set_warnings_enabled(!quiet);

  try {
    if (sim->parsed()) {
      sim_opts.benchmark.hurst_grid = ws::parse_real_grid(sim_h);
      sim_opts.benchmark.methods = parse_methods(sim_methods);
      sim_opts.benchmark.wang_energy = parse_energy(sim_energy);
      ws::cmd_simulate(sim_opts, std::cout);
    } else if (ext->parsed()) {
      ext_opts.method = ws::MethodConfig::defaults(ws::parse_method(ext_method));
      if (!ext_wavelet.empty()) ext_opts.method.wavelet = ws::parse_wavelet_family(ext_wavelet);
      if (ext->count("--depth")) ext_opts.method.depth = ext_depth;
      ext_opts.method.wang_energy = parse_energy(ext_energy);
      ext_opts.method.level_rules = ws::preset_rules(ws::parse_level_preset(ext_levels), ext_opts.method.method);
      ws::cmd_extract(ext_opts, std::cout);
    } else if (cls->parsed()) {
      const double C = cls_opts.classifiers.front().logistic.C;
      cls_opts.classifiers.clear();
      for (const auto& c : cls_classifiers) {
        auto spec = ws::parse_classifier(c);
        spec.logistic.C = C;
        cls_opts.classifiers.push_back(spec);
      }
      cls_opts.selections.clear();
      for (const auto& s : cls_selection) cls_opts.selections.push_back(ws::parse_selection_mode(s));
      cls_opts.standardize = !no_standardize;
      if (!cls_curve.empty()) cls_opts.curve = ws::parse_index_range(cls_curve);
      if (cls_opts.curve_repeats < 1) throw ws::ConfigError("--curve-repeats must be at least 1");
      if (bal->count()) cls_opts.balance_seed = balance_seed;
      if (shuf->count()) cls_opts.shuffle_seed = shuffle_seed;
      ws::cmd_classify(cls_features, cls_opts, cls_out, std::cout);
    } else if (pipe->parsed()) {
      auto config = ws::load_run_config(pipe_config);
      if (pipe_threads >= 0) config.threads = pipe_threads;
      ws::cmd_pipeline(config, std::cout);
    } else if (syn->parsed()) {
      ws::cmd_synth(syn_opts, std::cout);
    }
  } catch (const ws::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(e.code());
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(ws::ExitCode::ingestion);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(ws::ExitCode::estimation);
  }
  return 0;
}
