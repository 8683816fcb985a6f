#include <cmath>

#include "doctest.h"
#include "wavescale/errors.hpp"
#include "wavescale/filters.hpp"

using namespace wavescale;

TEST_CASE("haar taps") {
  const auto f = make_filter("haar");
  REQUIRE(f.length() == 2);
  CHECK(f.low[0] == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(f.low[1] == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(f.high[0] == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(f.high[1] == doctest::Approx(-1 / std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("filter invariants hold for every family") {
  for (auto fam : {WaveletFamily::haar, WaveletFamily::symmlet4}) {
    const auto f = make_filter(fam);
    CHECK_NOTHROW(check_filter_invariants(f, 1e-12));
    const std::size_t L = f.length();
    double sum = 0, energy = 0;
    for (double h : f.low) {
      sum += h;
      energy += h * h;
    }
    CHECK(std::abs(sum - std::sqrt(2.0)) < 1e-12);
    CHECK(std::abs(energy - 1.0) < 1e-12);
    for (std::size_t m = 1; 2 * m < L; ++m) {
      double dot = 0;
      for (std::size_t k = 0; k + 2 * m < L; ++k) dot += f.low[k] * f.low[k + 2 * m];
      CHECK(std::abs(dot) < 1e-12);
    }
    for (std::size_t k = 0; k < L; ++k)
      CHECK(f.high[k] == (k % 2 ? -1.0 : 1.0) * f.low[L - 1 - k]);
  }
}

TEST_CASE("symmlet4 has eight taps and two vanishing moments at least") {
  const auto f = make_filter(WaveletFamily::symmlet4);
  REQUIRE(f.length() == 8);
  // four vanishing moments of the high-pass filter
  for (int p = 0; p < 4; ++p) {
    double m = 0;
    for (std::size_t k = 0; k < 8; ++k) m += std::pow(static_cast<double>(k), p) * f.high[k];
    CHECK(std::abs(m) < 1e-9);
  }
}

TEST_CASE("family names") {
  CHECK(parse_wavelet_family("sym4") == WaveletFamily::symmlet4);
  CHECK(parse_wavelet_family("symmlet4") == WaveletFamily::symmlet4);
  CHECK_THROWS_AS(make_filter("db99"), ConfigError);
}

TEST_CASE("invariant check rejects a broken filter") {
  auto f = make_filter(WaveletFamily::haar);
  f.low[0] += 1e-6;
  CHECK_THROWS_AS(check_filter_invariants(f), ConfigError);
}
