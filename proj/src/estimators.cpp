#include "wavescale/estimators.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iostream>
#include <mutex>
#include <set>
#include <string>

#include "wavescale/errors.hpp"
#include "wavescale/log.hpp"

namespace wavescale {

namespace {
std::atomic<bool> g_warnings{true};
std::mutex g_log_mutex;
}  // namespace

void log_warning(std::string_view message) {
  if (!g_warnings.load()) return;
  std::lock_guard lock(g_log_mutex);
  std::cerr << "warning: " << message << '\n';
}

void set_warnings_enabled(bool enabled) { g_warnings.store(enabled); }
bool warnings_enabled() { return g_warnings.load(); }

Method parse_method(std::string_view name) {
  if (name == "dwt") return Method::dwt;
  if (name == "wang") return Method::wang;
  if (name == "jones") return Method::jones;
  throw ConfigError("unknown method '" + std::string(name) + "' (expected dwt, wang or jones)");
}

std::string_view method_name(Method method) {
  switch (method) {
    case Method::dwt: return "dwt";
    case Method::wang: return "wang";
    case Method::jones: return "jones";
  }
  return "unknown";
}

std::vector<int> detail_levels(const PacketTree& tree) {
  std::vector<int> out;
  for (int j = tree.signal_level() - 1; j >= tree.bottom_level(); --j) out.push_back(j);
  return out;
}

namespace {

double sum_squares(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

void check_levels(const PacketTree& tree, std::span<const int> levels) {
  if (levels.empty()) throw ConfigError("spectrum needs at least one level");
  for (int j : levels)
    if (j >= tree.signal_level() || j < tree.bottom_level())
      throw ConfigError("level " + std::to_string(j) + " is not a decomposed detail level (" +
                        std::to_string(tree.bottom_level()) + ".." +
                        std::to_string(tree.signal_level() - 1) + ")");
}

void push_point(std::vector<SpectrumPoint>& out, int level, double energy, std::string_view what) {
  if (energy > 0.0) {
    out.push_back({level, std::log2(energy)});
  } else {
    log_warning(std::string(what) + " spectrum: level " + std::to_string(level) +
                " has zero energy, point dropped");
  }
}

}  // namespace

std::vector<SpectrumPoint> spectrum_dwt(const PacketTree& tree, std::span<const int> levels) {
  check_levels(tree, levels);
  std::vector<SpectrumPoint> out;
  for (int j : levels) {
    const auto node = tree.node(j, 1);
    push_point(out, j, sum_squares(node) / static_cast<double>(node.size()), "dwt");
  }
  return out;
}

std::vector<SpectrumPoint> spectrum_wang(const PacketTree& tree, std::span<const int> levels,
                                         WangEnergy energy) {
  check_levels(tree, levels);
  std::vector<SpectrumPoint> out;
  for (int j : levels) {
    const std::size_t count = tree.node_count(j);
    const double len = static_cast<double>(tree.node_length(j));
    double total = 0.0;
    for (std::size_t k = 1; k < count; k += 2) {
      const double e = sum_squares(tree.node(j, k));
      total += energy == WangEnergy::node_mean ? e / len : e;
    }
    push_point(out, j, total / static_cast<double>(count / 2), "wang");
  }
  return out;
}

SlopeFit ordinary_least_squares(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ShapeError("regression inputs differ in length");
  const std::size_t n = x.size();
  if (n < 2) throw EstimationError("slope fit needs at least two points, got " + std::to_string(n));
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx <= 0.0) throw EstimationError("slope fit needs at least two distinct x values");
  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.n_points = static_cast<int>(n);
  fit.r_squared = syy > 0.0 ? std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0) : 1.0;
  return fit;
}

SlopeFit fit_slope(std::span<const SpectrumPoint> points) {
  if (points.size() < 2)
    throw EstimationError("slope fit needs at least two spectrum points, got " +
                          std::to_string(points.size()));
  std::set<int> seen;
  std::vector<double> x, y;
  for (const auto& p : points) {
    if (!seen.insert(p.level).second)
      throw EstimationError("spectrum has two points at level " + std::to_string(p.level));
    x.push_back(p.level);
    y.push_back(p.log_energy);
  }
  return ordinary_least_squares(x, y);
}

ScalingDescriptor estimate_dwt(const PacketTree& tree, std::span<const int> levels) {
  const auto points = spectrum_dwt(tree, levels);
  ScalingDescriptor d;
  d.method = Method::dwt;
  d.fit = fit_slope(points);
  d.slope = d.fit.slope;
  d.hurst = hurst_dwt(d.slope);
  return d;
}

ScalingDescriptor estimate_wang(const PacketTree& tree, std::span<const int> levels,
                                WangEnergy energy) {
  const auto points = spectrum_wang(tree, levels, energy);
  ScalingDescriptor d;
  d.method = Method::wang;
  d.fit = fit_slope(points);
  d.slope = d.fit.slope;
  d.hurst = hurst_wang(d.slope);
  return d;
}

ScalingDescriptor korcak_fit(std::span<const double> coefficients) {
  std::vector<double> sizes;
  sizes.reserve(coefficients.size());
  for (double c : coefficients)
    if (c != 0.0) sizes.push_back(std::abs(c));
  if (sizes.size() < 2)
    throw EstimationError("rank/size fit needs at least two nonzero coefficients");
  std::sort(sizes.begin(), sizes.end(), std::greater<>());

  std::vector<double> log_rank(sizes.size()), log_size(sizes.size());
  for (std::size_t r = 0; r < sizes.size(); ++r) {
    log_rank[r] = std::log(static_cast<double>(r + 1));
    log_size[r] = std::log(sizes[r]);
  }
  ScalingDescriptor d;
  d.method = Method::jones;
  d.fit = ordinary_least_squares(log_rank, log_size);
  d.slope = d.fit.slope;
  d.hurst = hurst_korcak(d.slope);
  return d;
}

ScalingDescriptor hurst_jones(const PacketTree& tree) {
  const auto basis = best_basis(tree);
  return korcak_fit(basis_coefficients(tree, basis));
}

}  // namespace wavescale
