#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace wavescale {

enum class WaveletFamily { haar, symmlet4 };

WaveletFamily parse_wavelet_family(std::string_view name);
std::string_view wavelet_family_name(WaveletFamily family);

/// Orthonormal two-channel analysis filter bank.
///
/// `low` holds the scaling filter h_k; `high` is its quadrature mirror
/// g_k = (-1)^k h_{L-1-k}.
struct FilterPair {
  WaveletFamily family = WaveletFamily::haar;
  std::vector<double> low;
  std::vector<double> high;

  std::size_t length() const { return low.size(); }
};

/// Builds the filter pair for a family and checks it against
/// check_filter_invariants() before returning.
FilterPair make_filter(WaveletFamily family);
FilterPair make_filter(std::string_view family);

/// Quadrature mirror of a low-pass filter.
std::vector<double> quadrature_mirror(const std::vector<double>& low);

/// Throws ConfigError unless sum(h) = sqrt(2), sum(h^2) = 1, the even-shift
/// autocorrelations of h vanish and `high` is the quadrature mirror of `low`,
/// all within `tolerance`.
void check_filter_invariants(const FilterPair& filter, double tolerance = 1e-12);

}  // namespace wavescale
