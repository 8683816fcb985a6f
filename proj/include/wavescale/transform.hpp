#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "wavescale/filters.hpp"

namespace wavescale {

// Level convention: a signal of length N = 2^J sits at level J; each
// decomposition step moves one level down, so the k-th step produces level J-k.

bool is_power_of_two(std::size_t n);
/// log2(n) for a power of two; throws ShapeError otherwise.
int dyadic_level(std::size_t n);

struct Subbands {
  std::vector<double> approx;
  std::vector<double> detail;
};

/// One periodic filter-and-decimate step:
///   approx[k] = sum_i h[i] * x[(2k + i) mod n], detail analogously with g.
Subbands analysis_step(std::span<const double> x, const FilterPair& filter);

/// Adjoint of analysis_step. With orthonormal filters this is its inverse.
std::vector<double> synthesis_step(std::span<const double> approx,
                                   std::span<const double> detail,
                                   const FilterPair& filter);

/// Mallat pyramid output. details[0] is the finest level (J-1), details.back()
/// the coarsest (J-depth); approx is the smooth part at level J-depth.
struct DwtDecomposition {
  int signal_level = 0;
  int depth = 0;
  std::vector<double> approx;
  std::vector<std::vector<double>> details;

  /// Detail coefficients at tree level j, J-depth <= j <= J-1.
  const std::vector<double>& detail_at(int level) const;
  std::size_t coefficient_count() const;
};

DwtDecomposition dwt_forward(std::span<const double> x, const FilterPair& filter, int depth);

/// Inverse of dwt_forward (used to construct test signals).
std::vector<double> dwt_inverse(const DwtDecomposition& dwt, const FilterPair& filter);

/// Full wavelet packet table of a dyadic signal.
///
/// Level j holds 2^(J-j) nodes of 2^j * N / 2^J coefficients each, stored
/// contiguously in natural (Paley) order: node (j, n) has children
/// (j-1, 2n) from the low-pass filter and (j-1, 2n+1) from the high-pass.
class PacketTree {
 public:
  PacketTree() = default;

  int signal_level() const { return signal_level_; }
  int depth() const { return depth_; }
  int bottom_level() const { return signal_level_ - depth_; }
  std::size_t signal_length() const { return signal_length_; }
  WaveletFamily family() const { return family_; }

  bool has_level(int level) const { return level <= signal_level_ && level >= bottom_level(); }
  std::size_t node_count(int level) const;
  std::size_t node_length(int level) const;

  /// All coefficients of a level, node after node.
  std::span<const double> level(int level) const;
  std::span<const double> node(int level, std::size_t index) const;

 private:
  friend PacketTree wpd_full(std::span<const double>, const FilterPair&, int);

  int signal_level_ = 0;
  int depth_ = 0;
  std::size_t signal_length_ = 0;
  WaveletFamily family_ = WaveletFamily::haar;
  std::vector<std::vector<double>> levels_;  // levels_[d] is tree level J-d
};

/// Decomposes every node `depth` times. 0 <= depth <= J.
PacketTree wpd_full(std::span<const double> x, const FilterPair& filter, int depth);

}  // namespace wavescale
