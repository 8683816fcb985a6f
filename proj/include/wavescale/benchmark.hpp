#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "wavescale/estimators.hpp"
#include "wavescale/filters.hpp"

namespace wavescale {

struct BenchmarkConfig {
  std::vector<double> hurst_grid{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  int replicates = 1000;
  std::size_t length = 1024;
  std::vector<Method> methods{Method::dwt, Method::wang, Method::jones};
  std::uint64_t master_seed = 7;
  int threads = 1;

  // Haar with 10 levels for the two spectra, symmlet-4 with 9 for the best basis.
  WaveletFamily spectrum_wavelet = WaveletFamily::haar;
  int spectrum_depth = 10;
  WaveletFamily jones_wavelet = WaveletFamily::symmlet4;
  int jones_depth = 9;
  WangEnergy wang_energy = WangEnergy::node_mean;
};

struct BenchmarkRow {
  double hurst = 0.0;
  Method method = Method::dwt;
  double mean = 0.0;
  double std = 0.0;
  int n = 0;         // successful replicates
  int failures = 0;  // replicates whose estimator threw
};

struct BenchmarkReport {
  std::vector<BenchmarkRow> rows;  // hurst-major, methods in config order

  const BenchmarkRow& at(double hurst, Method method) const;
};

/// Simulates `replicates` fBm paths per Hurst value (each from its own seed,
/// derived from master_seed, H index and replicate index) and estimates H with
/// every requested method on the same path. Spectra use all detail levels.
BenchmarkReport run_estimator_benchmark(const BenchmarkConfig& config);

/// CSV with header H,method,mean,std,n,failures.
void write_benchmark_csv(std::ostream& out, const BenchmarkReport& report);

}  // namespace wavescale
