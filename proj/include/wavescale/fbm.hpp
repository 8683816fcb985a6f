#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace wavescale {

struct FbmSpec {
  double hurst = 0.5;
  std::size_t length = 1024;
  std::uint64_t seed = 0;
};

/// Throws ConfigError unless 0 < hurst < 1 and length is a power of two >= 8.
void validate(const FbmSpec& spec);

/// Autocovariance of unit-variance fractional Gaussian noise at lag k:
/// (|k+1|^2H - 2|k|^2H + |k-1|^2H) / 2.
double fgn_autocovariance(double hurst, long lag);

/// Exact fractional Gaussian noise by circulant embedding of the Toeplitz
/// covariance (size 2N). If the embedding has an eigenvalue below -1e-9 the
/// sample is drawn by dense Cholesky factorization instead. Deterministic in
/// spec.seed.
std::vector<double> fgn_sample(const FbmSpec& spec);

/// Same generator for lengths that are not powers of two (used to build long
/// synthetic spectra). Requires length >= 2.
std::vector<double> fgn_sample_any_length(double hurst, std::size_t length, std::uint64_t seed);

/// Dense Cholesky path, exposed so tests can compare the two routes.
std::vector<double> fgn_sample_cholesky(double hurst, std::size_t length, std::uint64_t seed);

/// Running sum: out[i] = fgn[0] + ... + fgn[i].
std::vector<double> fbm_from_fgn(std::span<const double> fgn);

}  // namespace wavescale
