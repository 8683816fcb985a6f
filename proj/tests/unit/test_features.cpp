#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "doctest.h"
#include "helpers.hpp"
#include "wavescale/errors.hpp"
#include "wavescale/features.hpp"
#include "wavescale/log.hpp"
#include "wavescale/screening.hpp"
#include "wavescale/synthetic.hpp"

using namespace wavescale;

TEST_CASE("window grids") {
  const auto g = make_windows(15153);
  CHECK(g.size() == 29);
  CHECK(g.windows.back().end == 15024);
  CHECK(g.windows[5].start == 2500);
  CHECK(g.windows[5].end == 3524);
  CHECK(make_windows(1024).size() == 1);
  const auto d = make_windows(2048, 1024, 1024);
  REQUIRE(d.size() == 2);
  CHECK(d.windows[0].end == d.windows[1].start);
  CHECK_THROWS_AS(make_windows(1000), ConfigError);
  CHECK_THROWS_AS(make_windows(2048, 1024, 0), ConfigError);
}

TEST_CASE("window index and m/z ranges") {
  const auto g = make_windows(15153);
  std::vector<double> mz(15153);
  for (std::size_t i = 0; i < mz.size(); ++i) mz[i] = 0.5 * static_cast<double>(i) + 10.0;
  const auto r = window_mz_ranges(g, mz);
  CHECK(r[0].window == 1);
  CHECK(r[0].first_index == 1);
  CHECK(*r[0].mz_low == mz.front());
  CHECK(r[5].first_index == 2501);
  CHECK(r[5].last_index == 3524);
  CHECK(*r[5].mz_low == mz[2500]);
  CHECK(*r[5].mz_high == mz[3523]);
  CHECK(r[19].first_index == 9501);
  CHECK(r[19].last_index == 10524);

  const auto bare = window_mz_ranges(g, {});
  CHECK_FALSE(bare[3].mz_low.has_value());
  std::swap(mz[10], mz[11]);
  CHECK_THROWS_AS(window_mz_ranges(g, mz), IngestionError);
}

TEST_CASE("level presets") {
  const auto r = preset_rules(LevelPreset::nci_8_7_02, Method::dwt);
  REQUIRE(r.size() == 2);
  CHECK(r[0].first_window == 1);
  CHECK(r[0].last_window == 11);
  CHECK(r[0].first_level == 7);
  CHECK(r[0].last_level == 9);
  CHECK(r[1].first_level == 6);
  const auto w = preset_rules(LevelPreset::nci_8_7_02, Method::wang);
  CHECK(w[1].first_window == 16);
  CHECK(w[1].first_level == 5);
  CHECK(preset_rules(LevelPreset::all, Method::dwt).empty());
  CHECK(preset_rules(LevelPreset::nci_4_3_02, Method::jones).empty());

  auto cfg = MethodConfig::defaults(Method::wang);
  cfg.level_rules = w;
  const auto x = testing::random_vector(1024, 3);
  const auto tree = wpd_full(x, make_filter(WaveletFamily::haar), 10);
  CHECK(cfg.levels_for_window(0, tree) == std::vector<int>{9, 8, 7});
  CHECK(cfg.levels_for_window(15, tree) == std::vector<int>{9, 8, 7, 6, 5});
  CHECK(cfg.levels_for_window(40, tree).size() == 10);

  const auto j = MethodConfig::defaults(Method::jones);
  CHECK(j.wavelet == WaveletFamily::symmlet4);
  CHECK(j.depth == 9);
  CHECK_THROWS_AS(parse_level_preset("nci"), ConfigError);
}

TEST_CASE("fisher scores") {
  RowMatrix x(4, 2);
  // column 0: controls {0, 1}, cases {1, 2}: diff 1, variances 0.5 + 0.5
  x << 0, 5, 1, 5, 1, 5, 2, 5;
  const std::vector<int> y{0, 0, 1, 1};
  const auto f = fisher_scores(x, y);
  CHECK(f[0] == doctest::Approx(1.0));
  CHECK(f[1] == 0.0);

  RowMatrix z(4, 1);
  z << 1, 1, 2, 2;
  CHECK(std::isinf(fisher_scores(z, y)[0]));

  const std::vector<int> single{1, 1, 1, 1};
  CHECK_THROWS_AS(fisher_scores(x, single), EstimationError);

  // permutation and shift invariance
  const auto data = testing::random_vector(40, 5);
  RowMatrix m(20, 2);
  std::vector<int> lab(20);
  for (int i = 0; i < 20; ++i) {
    m(i, 0) = data[i] + (i % 2) * 0.7;
    m(i, 1) = data[20 + i];
    lab[i] = i % 2;
  }
  const auto base = fisher_scores(m, lab);
  std::vector<std::size_t> perm(20);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), std::mt19937_64(1));
  RowMatrix mp(20, 2);
  std::vector<int> lp(20);
  for (int i = 0; i < 20; ++i) {
    mp.row(i) = m.row(static_cast<Eigen::Index>(perm[i]));
    lp[i] = lab[perm[i]];
  }
  const auto permuted = fisher_scores(mp, lp);
  RowMatrix shifted = m.array() + 3.25;
  const auto sh = fisher_scores(shifted, lab);
  for (int c = 0; c < 2; ++c) {
    CHECK(permuted[c] == doctest::Approx(base[c]).epsilon(1e-12));
    CHECK(sh[c] == doctest::Approx(base[c]).epsilon(1e-9));
  }
}

TEST_CASE("select top") {
  const std::vector<double> s{3, 1, 2};
  CHECK(select_top(s, 2) == std::vector<std::size_t>{0, 2});
  CHECK(select_top(s, 3) == std::vector<std::size_t>{0, 2, 1});
  const std::vector<double> tie{2, 2};
  CHECK(select_top(tie, 1) == std::vector<std::size_t>{0});
  CHECK_THROWS_AS(select_top(s, 0), ConfigError);
  CHECK_THROWS_AS(select_top(s, 4), ConfigError);
  const std::vector<double> inf{1, std::numeric_limits<double>::infinity(), 5};
  CHECK(select_top(inf, 1) == std::vector<std::size_t>{1});

  const auto r = testing::random_vector(29, 4);
  auto all = select_top(r, 29);
  std::sort(all.begin(), all.end());
  for (std::size_t i = 0; i < 29; ++i) CHECK(all[i] == i);
}

TEST_CASE("class balancing") {
  std::vector<int> labels(253, kCase);
  for (int i = 0; i < 91; ++i) labels[static_cast<std::size_t>(i * 2)] = kControl;
  const auto idx = balanced_indices(labels, 11);
  CHECK(idx.size() == 182);
  int cases = 0;
  for (auto i : idx) cases += labels[i];
  CHECK(cases == 91);
  CHECK(std::is_sorted(idx.begin(), idx.end()));
  CHECK(balanced_indices(labels, 11) == idx);
  CHECK(balanced_indices(labels, 12) != idx);

  std::vector<int> even(20);
  for (int i = 0; i < 20; ++i) even[i] = i % 2;
  const auto same = balanced_indices(even, 1);
  CHECK(same.size() == 20);
}

namespace {

SpectraDataset small_synthetic(std::size_t per_class, std::uint64_t seed) {
  SyntheticSpec spec;
  spec.controls = per_class;
  spec.cases = per_class;
  spec.bins = 15153;
  spec.seed = seed;
  return make_synthetic_dataset(spec);
}

}  // namespace

TEST_CASE("extraction on synthetic two-class data") {
  const auto ds = small_synthetic(50, 2);
  const auto grid = make_windows(ds.bins());
  for (const Method m : {Method::dwt, Method::wang, Method::jones}) {
    auto cfg = MethodConfig::defaults(m);
    const auto fm = extract_features(ds, cfg, grid, 1);
    CHECK(fm.features() == 29);
    CHECK(fm.samples() == 100);
    // every window separates the classes
    const auto screens = screen_windows(fm);
    for (const auto& s : screens) {
      INFO(method_name(m) << " window " << s.window);
      CHECK(s.rank_sum.p_value < 1e-3);
    }
    for (std::size_t w = 0; w < 29; ++w) {
      double c0 = 0, c1 = 0;
      for (std::size_t i = 0; i < 100; ++i)
        (fm.labels[i] ? c1 : c0) += fm.slopes(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(w)) / 50;
      CHECK(c0 != doctest::Approx(c1).epsilon(0.05));
    }
    if (m != Method::jones) {
      for (Eigen::Index i = 0; i < 3; ++i)
        CHECK(fm.hurst(i, 0) == (m == Method::dwt ? hurst_dwt(fm.slopes(i, 0)) : hurst_wang(fm.slopes(i, 0))));
    }
  }
}

TEST_CASE("extraction does not depend on thread count") {
  const auto ds = small_synthetic(3, 9);
  auto cfg = MethodConfig::defaults(Method::wang);
  cfg.level_rules = preset_rules(LevelPreset::nci_8_7_02, Method::wang);
  const auto grid = make_windows(ds.bins());
  const auto a = extract_features(ds, cfg, grid, 1);
  const auto b = extract_features(ds, cfg, grid, 4);
  CHECK(a.slopes == b.slopes);
  CHECK(a.hurst == b.hurst);
}

TEST_CASE("constant spectra surface an estimation error with context") {
  auto ds = small_synthetic(2, 1);
  ds.intensities.row(2).setConstant(3.0);
  set_warnings_enabled(false);
  std::string msg;
  try {
    extract_features(ds, MethodConfig::defaults(Method::dwt), make_windows(ds.bins()), 1);
  } catch (const EstimationError& e) {
    msg = e.what();
  }
  set_warnings_enabled(true);
  CHECK(msg.find(ds.sample_ids[2]) != std::string::npos);
  CHECK(msg.find("window 1") != std::string::npos);
}

TEST_CASE("feature csv round trip") {
  const auto ds = small_synthetic(2, 4);
  const auto fm = extract_features(ds, MethodConfig::defaults(Method::wang), make_windows(ds.bins()), 1);
  const auto dir = testing::scratch_dir("featcsv");
  {
    std::ofstream out(dir / "f.csv");
    write_feature_csv(out, fm);
  }
  const auto back = read_feature_csv(dir / "f.csv");
  CHECK(back.sample_ids == fm.sample_ids);
  CHECK(back.labels == fm.labels);
  CHECK(back.slopes == fm.slopes);

  std::ostringstream meta;
  write_window_metadata_csv(meta, window_mz_ranges(fm.grid, ds.mz_values));
  CHECK(meta.str().rfind("window,first_index,last_index,mz_low,mz_high\n1,1,1024,", 0) == 0);
}
