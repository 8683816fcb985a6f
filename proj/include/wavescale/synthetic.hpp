#pragma once

#include <cstdint>

#include "wavescale/dataset.hpp"

namespace wavescale {

// Two-class stand-in for a spectra dataset: every sample is an fBm path,
// controls with one Hurst exponent and cases with another.
struct SyntheticSpec {
  std::size_t controls = 50;
  std::size_t cases = 50;
  std::size_t bins = 15153;
  double control_hurst = 0.3;
  double case_hurst = 0.7;
  std::uint64_t seed = 1;
};

/// Each path is generated at the next power of two and truncated to `bins`.
/// The m/z axis is quadratic in the bin index, as for time-of-flight data.
/// Sample ids are control001.., case001..; controls come first.
SpectraDataset make_synthetic_dataset(const SyntheticSpec& spec, int threads = 1);

}  // namespace wavescale
