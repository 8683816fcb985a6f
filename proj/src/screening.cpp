#include "wavescale/screening.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "wavescale/errors.hpp"

namespace wavescale {

RankSumResult rank_sum_normal_approximation(std::span<const double> a, std::span<const double> b) {
  const std::size_t n1 = a.size(), n2 = b.size(), n = n1 + n2;
  if (n1 == 0 || n2 == 0) throw EstimationError("rank-sum test needs two non-empty samples");

  std::vector<std::pair<double, bool>> pooled;  // (value, from first sample)
  pooled.reserve(n);
  for (double v : a) pooled.emplace_back(v, true);
  for (double v : b) pooled.emplace_back(v, false);
  std::sort(pooled.begin(), pooled.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });

  // Mid-ranks; accumulate the tie term sum(t^3 - t).
  double rank_sum_a = 0.0;
  double tie_term = 0.0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && pooled[j].first == pooled[i].first) ++j;
    const double mid_rank = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k)
      if (pooled[k].second) rank_sum_a += mid_rank;
    const double t = static_cast<double>(j - i);
    tie_term += t * t * t - t;
    i = j;
  }

  const double dn1 = static_cast<double>(n1), dn2 = static_cast<double>(n2);
  const double dn = static_cast<double>(n);
  RankSumResult out;
  out.u_statistic = rank_sum_a - dn1 * (dn1 + 1.0) / 2.0;
  const double mean = dn1 * dn2 / 2.0;
  const double variance = dn1 * dn2 / 12.0 * ((dn + 1.0) - tie_term / (dn * (dn - 1.0)));
  if (variance <= 0.0) {
    out.z = 0.0;
    out.p_value = 1.0;
    return out;
  }
  out.z = std::max(0.0, std::abs(out.u_statistic - mean) - 0.5) / std::sqrt(variance);
  out.p_value = std::min(1.0, std::erfc(out.z / std::sqrt(2.0)));
  return out;
}

RankSumResult rank_sum_test(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 5 || b.size() < 5)
    throw EstimationError("rank-sum normal approximation needs at least 5 observations per sample "
                          "(got " + std::to_string(a.size()) + " and " + std::to_string(b.size()) + ")");
  return rank_sum_normal_approximation(a, b);
}

std::vector<WindowScreen> screen_windows(const FeatureMatrix& features) {
  const auto fisher = fisher_scores(features);
  std::vector<WindowScreen> out;
  for (std::size_t w = 0; w < features.features(); ++w) {
    std::vector<double> cases, controls;
    for (std::size_t s = 0; s < features.samples(); ++s) {
      const double v = features.slopes(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(w));
      (features.labels[s] == kCase ? cases : controls).push_back(v);
    }
    out.push_back({w + 1, fisher[w], rank_sum_test(cases, controls)});
  }
  return out;
}

}  // namespace wavescale
