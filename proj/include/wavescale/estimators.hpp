#pragma once

#include <cmath>
#include <span>
#include <string_view>
#include <vector>

#include "wavescale/best_basis.hpp"
#include "wavescale/transform.hpp"

namespace wavescale {

enum class Method { dwt, wang, jones };

Method parse_method(std::string_view name);
std::string_view method_name(Method method);

struct SpectrumPoint {
  int level = 0;            // tree level j
  double log_energy = 0.0;  // log2 of the level energy
};

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  int n_points = 0;
  double r_squared = 0.0;
};

struct ScalingDescriptor {
  Method method = Method::dwt;
  double slope = 0.0;
  double hurst = 0.0;
  SlopeFit fit;
};

// How a Wang packet-detail node is reduced to an energy before the per-level
// average. node_mean uses the mean of squares (same as the DWT spectrum) and
// yields slope ~ -2H on fBm; node_sum uses the plain sum of squares, which
// adds log2 of the node count to every level and shifts the slope by +1.
enum class WangEnergy { node_mean, node_sum };

/// Detail levels of a tree, finest first: J-1 down to the bottom level.
std::vector<int> detail_levels(const PacketTree& tree);

/// log2(mean of squares) of the DWT detail node (j, 1) for each requested level.
/// Levels whose energy is exactly zero are dropped with a warning.
std::vector<SpectrumPoint> spectrum_dwt(const PacketTree& tree, std::span<const int> levels);

/// log2 of the average energy of the high-pass (odd-index) nodes at each level.
std::vector<SpectrumPoint> spectrum_wang(const PacketTree& tree, std::span<const int> levels,
                                         WangEnergy energy = WangEnergy::node_mean);

/// Ordinary least squares of log_energy on level. Throws EstimationError with
/// fewer than two points or a repeated level.
SlopeFit fit_slope(std::span<const SpectrumPoint> points);

/// Ordinary least squares y = intercept + slope * x.
SlopeFit ordinary_least_squares(std::span<const double> x, std::span<const double> y);

inline double hurst_dwt(double slope) { return -(slope + 1.0) / 2.0; }
inline double hurst_wang(double slope) { return -slope / 2.0; }
inline double hurst_korcak(double slope) { return std::abs(slope + 1.0); }

ScalingDescriptor estimate_dwt(const PacketTree& tree, std::span<const int> levels);
ScalingDescriptor estimate_wang(const PacketTree& tree, std::span<const int> levels,
                                WangEnergy energy = WangEnergy::node_mean);

/// Rank/size power-law fit: absolute values sorted in descending order are
/// regressed (natural logs) on their rank 1..m; zeros are excluded.
ScalingDescriptor korcak_fit(std::span<const double> coefficients);

/// Best-basis Korcak estimate on a packet tree.
ScalingDescriptor hurst_jones(const PacketTree& tree);

}  // namespace wavescale
