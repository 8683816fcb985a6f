#include "wavescale/transform.hpp"

#include <bit>
#include <string>

#include "wavescale/errors.hpp"

namespace wavescale {

bool is_power_of_two(std::size_t n) { return n > 0 && std::has_single_bit(n); }

int dyadic_level(std::size_t n) {
  if (!is_power_of_two(n))
    throw ShapeError("signal length " + std::to_string(n) + " is not a power of two");
  return std::countr_zero(n);
}

namespace {

// Shared kernel so that DWT and packet nodes follow the same arithmetic path.
void filter_decimate(std::span<const double> x, const std::vector<double>& taps,
                     std::span<double> out) {
  const std::size_t n = x.size();
  const std::size_t len = taps.size();
  for (std::size_t k = 0; k < out.size(); ++k) {
    double acc = 0.0;
    for (std::size_t i = 0; i < len; ++i) acc += taps[i] * x[(2 * k + i) % n];
    out[k] = acc;
  }
}

void check_even(std::size_t n) {
  if (n % 2 != 0)
    throw ShapeError("analysis step needs an even-length input, got " + std::to_string(n));
}

}  // namespace

Subbands analysis_step(std::span<const double> x, const FilterPair& filter) {
  check_even(x.size());
  Subbands out;
  out.approx.resize(x.size() / 2);
  out.detail.resize(x.size() / 2);
  filter_decimate(x, filter.low, out.approx);
  filter_decimate(x, filter.high, out.detail);
  return out;
}

std::vector<double> synthesis_step(std::span<const double> approx, std::span<const double> detail,
                                   const FilterPair& filter) {
  if (approx.size() != detail.size())
    throw ShapeError("synthesis step needs approx and detail of equal length");
  const std::size_t n = 2 * approx.size();
  std::vector<double> x(n, 0.0);
  for (std::size_t k = 0; k < approx.size(); ++k)
    for (std::size_t i = 0; i < filter.length(); ++i)
      x[(2 * k + i) % n] += filter.low[i] * approx[k] + filter.high[i] * detail[k];
  return x;
}

const std::vector<double>& DwtDecomposition::detail_at(int level) const {
  const int offset = signal_level - 1 - level;
  if (offset < 0 || offset >= depth)
    throw ConfigError("DWT has no detail level " + std::to_string(level));
  return details[static_cast<std::size_t>(offset)];
}

std::size_t DwtDecomposition::coefficient_count() const {
  std::size_t total = approx.size();
  for (const auto& d : details) total += d.size();
  return total;
}

DwtDecomposition dwt_forward(std::span<const double> x, const FilterPair& filter, int depth) {
  const int levels = dyadic_level(x.size());
  if (depth < 1 || depth > levels)
    throw ConfigError("DWT depth " + std::to_string(depth) + " outside [1, " +
                      std::to_string(levels) + "]");
  DwtDecomposition out;
  out.signal_level = levels;
  out.depth = depth;
  out.approx.assign(x.begin(), x.end());
  for (int d = 0; d < depth; ++d) {
    auto bands = analysis_step(out.approx, filter);
    out.approx = std::move(bands.approx);
    out.details.push_back(std::move(bands.detail));
  }
  return out;
}

std::vector<double> dwt_inverse(const DwtDecomposition& dwt, const FilterPair& filter) {
  std::vector<double> approx = dwt.approx;
  for (auto it = dwt.details.rbegin(); it != dwt.details.rend(); ++it)
    approx = synthesis_step(approx, *it, filter);
  return approx;
}

std::size_t PacketTree::node_count(int level) const {
  if (!has_level(level)) throw ConfigError("packet tree has no level " + std::to_string(level));
  return std::size_t{1} << (signal_level_ - level);
}

std::size_t PacketTree::node_length(int level) const {
  return signal_length_ / node_count(level);
}

std::span<const double> PacketTree::level(int level) const {
  if (!has_level(level)) throw ConfigError("packet tree has no level " + std::to_string(level));
  return levels_[static_cast<std::size_t>(signal_level_ - level)];
}

std::span<const double> PacketTree::node(int level, std::size_t index) const {
  const std::size_t count = node_count(level);
  if (index >= count)
    throw ConfigError("node index " + std::to_string(index) + " out of range at level " +
                      std::to_string(level));
  const std::size_t len = signal_length_ / count;
  return this->level(level).subspan(index * len, len);
}

PacketTree wpd_full(std::span<const double> x, const FilterPair& filter, int depth) {
  const int levels = dyadic_level(x.size());
  if (depth < 0 || depth > levels)
    throw ConfigError("packet depth " + std::to_string(depth) + " outside [0, " +
                      std::to_string(levels) + "]");
  PacketTree tree;
  tree.signal_level_ = levels;
  tree.depth_ = depth;
  tree.signal_length_ = x.size();
  tree.family_ = filter.family;
  tree.levels_.reserve(static_cast<std::size_t>(depth) + 1);
  tree.levels_.emplace_back(x.begin(), x.end());

  const std::size_t n = x.size();
  for (int d = 1; d <= depth; ++d) {
    const auto& parent = tree.levels_.back();
    std::vector<double> child(n);
    const std::size_t parent_len = n >> (d - 1);
    const std::size_t half = parent_len / 2;
    for (std::size_t p = 0; p < (std::size_t{1} << (d - 1)); ++p) {
      std::span<const double> src(parent.data() + p * parent_len, parent_len);
      std::span<double> lo(child.data() + 2 * p * half, half);
      std::span<double> hi(child.data() + (2 * p + 1) * half, half);
      filter_decimate(src, filter.low, lo);
      filter_decimate(src, filter.high, hi);
    }
    tree.levels_.push_back(std::move(child));
  }
  return tree;
}

}  // namespace wavescale
