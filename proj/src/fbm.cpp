#include "wavescale/fbm.hpp"

#include <fftw3.h>

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <string>

#include "wavescale/errors.hpp"
#include "wavescale/transform.hpp"

namespace wavescale {

namespace {

// FFTW planning is not thread-safe; executing an existing plan on new arrays is.
class FftPlans {
 public:
  static FftPlans& instance() {
    static FftPlans plans;
    return plans;
  }

  fftw_plan forward(int n) {
    std::lock_guard lock(mutex_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;
    fftw_complex* in = fftw_alloc_complex(static_cast<std::size_t>(n));
    fftw_complex* out = fftw_alloc_complex(static_cast<std::size_t>(n));
    fftw_plan p = fftw_plan_dft_1d(n, in, out, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(in);
    fftw_free(out);
    plans_.emplace(n, p);
    return p;
  }

  ~FftPlans() {
    for (auto& [n, p] : plans_) fftw_destroy_plan(p);
  }

 private:
  FftPlans() = default;
  std::mutex mutex_;
  std::map<int, fftw_plan> plans_;
};

struct FftwBuffer {
  explicit FftwBuffer(std::size_t n) : data(fftw_alloc_complex(n)) {}
  ~FftwBuffer() { fftw_free(data); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
  fftw_complex* data;
};

void check_hurst(double hurst) {
  if (!(hurst > 0.0 && hurst < 1.0))
    throw ConfigError("Hurst exponent must lie strictly inside (0, 1), got " +
                      std::to_string(hurst));
}

}  // namespace

void validate(const FbmSpec& spec) {
  check_hurst(spec.hurst);
  if (!is_power_of_two(spec.length) || spec.length < 8)
    throw ConfigError("fBm length must be a power of two >= 8, got " +
                      std::to_string(spec.length));
}

double fgn_autocovariance(double hurst, long lag) {
  const double k = std::abs(static_cast<double>(lag));
  const double two_h = 2.0 * hurst;
  return 0.5 * (std::pow(k + 1.0, two_h) - 2.0 * std::pow(k, two_h) +
                std::pow(std::abs(k - 1.0), two_h));
}

std::vector<double> fgn_sample_cholesky(double hurst, std::size_t length, std::uint64_t seed) {
  check_hurst(hurst);
  const auto n = static_cast<Eigen::Index>(length);
  Eigen::MatrixXd cov(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) cov(i, j) = fgn_autocovariance(hurst, static_cast<long>(i - j));
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success)
    throw EstimationError("fGn covariance is not positive definite");

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Eigen::VectorXd z(n);
  for (Eigen::Index i = 0; i < n; ++i) z(i) = normal(rng);
  const Eigen::VectorXd x = llt.matrixL() * z;
  return {x.data(), x.data() + n};
}

std::vector<double> fgn_sample_any_length(double hurst, std::size_t length, std::uint64_t seed) {
  check_hurst(hurst);
  if (length < 2) throw ConfigError("fGn length must be at least 2");

  // First row of the 2N circulant: gamma(0..N), then gamma(N-1..1).
  const std::size_t m = 2 * length;
  FftwBuffer row(m), eig(m);
  for (std::size_t k = 0; k <= length; ++k) {
    row.data[k][0] = fgn_autocovariance(hurst, static_cast<long>(k));
    row.data[k][1] = 0.0;
  }
  for (std::size_t k = length + 1; k < m; ++k) {
    row.data[k][0] = row.data[m - k][0];
    row.data[k][1] = 0.0;
  }
  fftw_plan plan = FftPlans::instance().forward(static_cast<int>(m));
  fftw_execute_dft(plan, row.data, eig.data);

  double min_eig = eig.data[0][0];
  for (std::size_t k = 1; k < m; ++k) min_eig = std::min(min_eig, eig.data[k][0]);
  if (min_eig < -1e-9) return fgn_sample_cholesky(hurst, length, seed);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  FftwBuffer w(m), out(m);
  for (std::size_t k = 0; k < m; ++k) {
    const double scale = std::sqrt(std::max(eig.data[k][0], 0.0) / static_cast<double>(m));
    w.data[k][0] = scale * normal(rng);
    w.data[k][1] = scale * normal(rng);
  }
  fftw_execute_dft(plan, w.data, out.data);

  std::vector<double> x(length);
  for (std::size_t i = 0; i < length; ++i) x[i] = out.data[i][0];
  return x;
}

std::vector<double> fgn_sample(const FbmSpec& spec) {
  validate(spec);
  return fgn_sample_any_length(spec.hurst, spec.length, spec.seed);
}

std::vector<double> fbm_from_fgn(std::span<const double> fgn) {
  std::vector<double> out(fgn.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < fgn.size(); ++i) {
    acc += fgn[i];
    out[i] = acc;
  }
  return out;
}

}  // namespace wavescale
