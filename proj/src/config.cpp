#include "wavescale/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "wavescale/csv.hpp"
#include "wavescale/errors.hpp"

namespace wavescale {

namespace fs = std::filesystem;

std::vector<std::size_t> IndexRange::values() const {
  std::vector<std::size_t> out;
  for (std::size_t v = first; v <= last; ++v) out.push_back(v);
  return out;
}

namespace {

std::size_t parse_count(std::string_view text, const std::string& whole) {
  const std::string t = trim(text);
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty())
    throw ConfigError("bad integer range '" + whole + "'");
  return v;
}

double parse_real(std::string_view text, const std::string& whole) {
  try {
    return parse_double(trim(text), "range '" + whole + "'");
  } catch (const IngestionError&) {
    throw ConfigError("bad number in '" + whole + "'");
  }
}

}  // namespace

IndexRange parse_index_range(const std::string& text) {
  IndexRange r;
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    r.first = r.last = parse_count(text, text);
  } else {
    r.first = parse_count(std::string_view(text).substr(0, dots), text);
    r.last = parse_count(std::string_view(text).substr(dots + 2), text);
  }
  if (r.first < 1 || r.last < r.first) throw ConfigError("empty or invalid range '" + text + "'");
  return r;
}

std::vector<double> parse_real_grid(const std::string& text) {
  std::vector<double> out;
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    std::string_view rest(text);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      out.push_back(parse_real(rest.substr(0, comma), text));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (out.empty()) throw ConfigError("empty grid '" + text + "'");
    return out;
  }
  const std::string_view sv(text);
  const double lo = parse_real(sv.substr(0, dots), text);
  std::string_view tail = sv.substr(dots + 2);
  double step = 0.1;
  if (const auto colon = tail.find(':'); colon != std::string_view::npos) {
    step = parse_real(tail.substr(colon + 1), text);
    tail = tail.substr(0, colon);
  }
  const double hi = parse_real(tail, text);
  if (!(step > 0.0) || hi < lo) throw ConfigError("invalid grid '" + text + "'");
  const auto count = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
  for (long i = 0; i <= count; ++i) {
    // round to 12 digits so 0.1 + 2*0.1 prints as 0.3
    const double v = lo + static_cast<double>(i) * step;
    out.push_back(std::round(v * 1e12) / 1e12);
  }
  return out;
}

namespace {

const std::set<std::string> kTopKeys = {
    "data",       "labels",      "output",    "method",   "wavelet",      "depth",
    "window",     "levels",      "wang_energy", "balance_seed", "classifiers", "selection",
    "standardize", "features",   "split",     "curve",    "curve_repeats", "repeat_log",
    "threads"};

void check_keys(const YAML::Node& node, const std::set<std::string>& allowed,
                const std::string& where) {
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (!allowed.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

template <typename T>
T scalar(const YAML::Node& node, const std::string& key) {
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError("config key '" + key + "' has the wrong type");
  }
}

fs::path existing_path(const YAML::Node& node, const std::string& key, const fs::path& base) {
  if (!node) throw ConfigError("config is missing '" + key + "'");
  fs::path p = scalar<std::string>(node, key);
  if (p.is_relative()) p = base / p;
  if (!fs::exists(p)) throw ConfigError("config '" + key + "': " + p.string() + " does not exist");
  return p;
}

std::vector<LevelRule> custom_rules(const YAML::Node& list) {
  std::vector<LevelRule> rules;
  for (const auto& item : list) {
    if (!item.IsMap()) throw ConfigError("each entry of 'levels' must be a map");
    check_keys(item, {"windows", "levels"}, "a level rule");
    const auto windows = item["windows"];
    const auto levels = item["levels"];
    if (!windows || !levels || windows.size() != 2 || levels.size() != 2)
      throw ConfigError("level rule needs 'windows: [first, last]' and 'levels: [low, high]'");
    LevelRule r;
    r.first_window = scalar<std::size_t>(windows[0], "windows");
    r.last_window = scalar<std::size_t>(windows[1], "windows");
    r.first_level = tree_level_from_published(scalar<int>(levels[0], "levels"));
    r.last_level = tree_level_from_published(scalar<int>(levels[1], "levels"));
    if (r.first_window < 1 || r.last_window < r.first_window || r.first_level < 0 ||
        r.last_level < r.first_level)
      throw ConfigError("level rule has an empty or invalid range");
    rules.push_back(r);
  }
  return rules;
}

}  // namespace

RunConfig parse_run_config(const std::string& yaml_text, const fs::path& base_dir) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("config is not valid YAML: ") + e.what());
  }
  if (!root.IsMap()) throw ConfigError("config must be a YAML mapping");
  check_keys(root, kTopKeys, "config");

  RunConfig cfg;
  if (!root["method"]) throw ConfigError("config is missing 'method' (dwt, wang or jones)");
  cfg.method = MethodConfig::defaults(parse_method(scalar<std::string>(root["method"], "method")));
  if (root["wavelet"])
    cfg.method.wavelet = parse_wavelet_family(scalar<std::string>(root["wavelet"], "wavelet"));
  if (root["depth"]) cfg.method.depth = scalar<int>(root["depth"], "depth");
  if (root["wang_energy"]) {
    const auto e = scalar<std::string>(root["wang_energy"], "wang_energy");
    if (e == "node-mean") cfg.method.wang_energy = WangEnergy::node_mean;
    else if (e == "node-sum") cfg.method.wang_energy = WangEnergy::node_sum;
    else throw ConfigError("wang_energy must be node-mean or node-sum");
  }
  if (const auto w = root["window"]) {
    check_keys(w, {"length", "stride"}, "'window'");
    if (w["length"]) cfg.window_length = scalar<std::size_t>(w["length"], "window.length");
    if (w["stride"]) cfg.window_stride = scalar<std::size_t>(w["stride"], "window.stride");
  }
  if (const auto lv = root["levels"]) {
    if (lv.IsSequence()) {
      cfg.level_source = "custom";
      cfg.method.level_rules = custom_rules(lv);
    } else {
      cfg.level_source = scalar<std::string>(lv, "levels");
    }
  }
  if (cfg.level_source != "custom")
    cfg.method.level_rules = preset_rules(parse_level_preset(cfg.level_source), cfg.method.method);

  if (root["balance_seed"]) cfg.balance_seed = scalar<std::uint64_t>(root["balance_seed"], "balance_seed");
  if (const auto cl = root["classifiers"]) {
    cfg.classifiers.clear();
    for (const auto& c : cl) cfg.classifiers.push_back(parse_classifier(scalar<std::string>(c, "classifiers")));
    if (cfg.classifiers.empty()) throw ConfigError("'classifiers' is empty");
  }
  if (const auto sel = root["selection"]) {
    cfg.selections.clear();
    if (sel.IsSequence()) {
      for (const auto& s : sel) cfg.selections.push_back(parse_selection_mode(scalar<std::string>(s, "selection")));
    } else {
      cfg.selections.push_back(parse_selection_mode(scalar<std::string>(sel, "selection")));
    }
    if (cfg.selections.empty()) throw ConfigError("'selection' is empty");
  }
  if (root["standardize"]) cfg.standardize = scalar<bool>(root["standardize"], "standardize");
  if (root["features"]) cfg.features = scalar<std::size_t>(root["features"], "features");
  if (const auto sp = root["split"]) {
    check_keys(sp, {"train_fraction", "repeats", "seed"}, "'split'");
    if (sp["train_fraction"]) cfg.split.train_fraction = scalar<double>(sp["train_fraction"], "split.train_fraction");
    if (sp["repeats"]) cfg.split.repeats = scalar<int>(sp["repeats"], "split.repeats");
    if (sp["seed"]) cfg.split.master_seed = scalar<std::uint64_t>(sp["seed"], "split.seed");
  }
  cfg.split.validate();
  if (root["curve"]) cfg.curve = parse_index_range(scalar<std::string>(root["curve"], "curve"));
  if (root["curve_repeats"]) cfg.curve_repeats = scalar<int>(root["curve_repeats"], "curve_repeats");
  if (cfg.curve_repeats < 1) throw ConfigError("curve_repeats must be at least 1");
  if (root["repeat_log"]) cfg.repeat_log = scalar<bool>(root["repeat_log"], "repeat_log");
  if (root["threads"]) cfg.threads = scalar<int>(root["threads"], "threads");

  if (cfg.window_length == 0 || cfg.window_stride == 0)
    throw ConfigError("window length and stride must be positive");
  if (cfg.features < 1) throw ConfigError("'features' must be at least 1");

  cfg.data = existing_path(root["data"], "data", base_dir);
  cfg.labels = existing_path(root["labels"], "labels", base_dir);
  if (!root["output"]) throw ConfigError("config is missing 'output'");
  cfg.output = scalar<std::string>(root["output"], "output");
  if (cfg.output.is_relative()) cfg.output = base_dir / cfg.output;
  return cfg;
}

RunConfig load_run_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_run_config(buf.str(), path.parent_path());
}

}  // namespace wavescale
