#include "wavescale/synthetic.hpp"

#include <cstdio>
#include <string>

#include "wavescale/errors.hpp"
#include "wavescale/fbm.hpp"
#include "wavescale/parallel.hpp"

namespace wavescale {

namespace {

std::string numbered(const char* prefix, std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s%03zu", prefix, i + 1);
  return buf;
}

}  // namespace

SpectraDataset make_synthetic_dataset(const SyntheticSpec& spec, int threads) {
  if (spec.controls < 1 || spec.cases < 1) throw ConfigError("synthetic data needs both classes");
  if (spec.bins < 8) throw ConfigError("synthetic spectra need at least 8 bins");
  std::size_t length = 8;
  while (length < spec.bins) length *= 2;

  const std::size_t n = spec.controls + spec.cases;
  SpectraDataset ds;
  ds.intensities.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(spec.bins));
  ds.labels.resize(n);
  ds.sample_ids.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const bool is_case = i >= spec.controls;
    ds.labels[i] = is_case ? kCase : kControl;
    ds.sample_ids[i] = is_case ? numbered("case", i - spec.controls) : numbered("control", i);
  }
  parallel_for(n, resolve_threads(threads), [&](std::size_t i) {
    const double h = ds.labels[i] == kCase ? spec.case_hurst : spec.control_hurst;
    const auto path = fbm_from_fgn(fgn_sample({h, length, derive_seed(spec.seed, 0x5e7, i)}));
    for (std::size_t b = 0; b < spec.bins; ++b)
      ds.intensities(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(b)) = path[b];
  });
  // roughly the span of a SELDI grid: ~0 .. 20,000 over 15,153 bins
  ds.mz_values.resize(spec.bins);
  for (std::size_t b = 0; b < spec.bins; ++b) {
    const double t = static_cast<double>(b + 1);
    ds.mz_values[b] = 8.7e-5 * t * t;
  }
  ds.validate();
  return ds;
}

}  // namespace wavescale
