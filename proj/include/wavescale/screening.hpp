#pragma once

#include <span>
#include <vector>

#include "wavescale/features.hpp"

namespace wavescale {

struct RankSumResult {
  double u_statistic = 0.0;  // Mann-Whitney U of the first sample
  double z = 0.0;            // continuity-corrected standardized |U - n1 n2 / 2|
  double p_value = 1.0;      // two-sided
};

/// Wilcoxon rank-sum test, normal approximation with tie-corrected variance
/// and a 0.5 continuity correction. No sample-size guard.
RankSumResult rank_sum_normal_approximation(std::span<const double> a, std::span<const double> b);

/// Same statistic; throws EstimationError unless both samples have at least
/// five observations, where the normal approximation is usable.
RankSumResult rank_sum_test(std::span<const double> a, std::span<const double> b);

struct WindowScreen {
  std::size_t window = 0;  // 1-based
  double fisher = 0.0;
  RankSumResult rank_sum;
};

/// Case-vs-control rank-sum test and Fisher score for every feature column.
std::vector<WindowScreen> screen_windows(const FeatureMatrix& features);

}  // namespace wavescale
