#include "wavescale/benchmark.hpp"

#include <cmath>
#include <optional>
#include <ostream>
#include <string>

#include "wavescale/csv.hpp"
#include "wavescale/errors.hpp"
#include "wavescale/fbm.hpp"
#include "wavescale/parallel.hpp"

namespace wavescale {

const BenchmarkRow& BenchmarkReport::at(double hurst, Method method) const {
  for (const auto& row : rows)
    if (std::abs(row.hurst - hurst) < 1e-12 && row.method == method) return row;
  throw ConfigError("benchmark has no row for H=" + std::to_string(hurst) + " method " +
                    std::string(method_name(method)));
}

BenchmarkReport run_estimator_benchmark(const BenchmarkConfig& config) {
  if (config.replicates < 2) throw ConfigError("benchmark needs at least 2 replicates");
  if (config.methods.empty()) throw ConfigError("benchmark needs at least one method");
  for (double h : config.hurst_grid) validate(FbmSpec{h, config.length, 0});

  const FilterPair spectrum_filter = make_filter(config.spectrum_wavelet);
  const FilterPair jones_filter = make_filter(config.jones_wavelet);
  const auto reps = static_cast<std::size_t>(config.replicates);
  const std::size_t methods = config.methods.size();

  BenchmarkReport report;
  for (std::size_t hi = 0; hi < config.hurst_grid.size(); ++hi) {
    const double hurst = config.hurst_grid[hi];
    // estimates[r * methods + m]; empty when the estimator failed.
    std::vector<std::optional<double>> estimates(reps * methods);

    parallel_for(reps, config.threads, [&](std::size_t r) {
      const FbmSpec spec{hurst, config.length, derive_seed(config.master_seed, hi, r)};
      const auto path = fbm_from_fgn(fgn_sample(spec));

      std::optional<PacketTree> spectrum_tree;
      for (std::size_t m = 0; m < methods; ++m) {
        const Method method = config.methods[m];
        try {
          if (method == Method::jones) {
            const auto tree = wpd_full(path, jones_filter, config.jones_depth);
            estimates[r * methods + m] = hurst_jones(tree).hurst;
            continue;
          }
          if (!spectrum_tree) spectrum_tree = wpd_full(path, spectrum_filter, config.spectrum_depth);
          const auto levels = detail_levels(*spectrum_tree);
          estimates[r * methods + m] =
              method == Method::dwt ? estimate_dwt(*spectrum_tree, levels).hurst
                                    : estimate_wang(*spectrum_tree, levels, config.wang_energy).hurst;
        } catch (const EstimationError&) {
        }
      }
    });

    for (std::size_t m = 0; m < methods; ++m) {
      std::vector<double> ok;
      int failures = 0;
      for (std::size_t r = 0; r < reps; ++r) {
        if (const auto& e = estimates[r * methods + m])
          ok.push_back(*e);
        else
          ++failures;
      }
      const auto stats = mean_std(ok);
      report.rows.push_back({hurst, config.methods[m], stats.mean, stats.std,
                             static_cast<int>(ok.size()), failures});
    }
  }
  return report;
}

void write_benchmark_csv(std::ostream& out, const BenchmarkReport& report) {
  out << "H,method,mean,std,n,failures\n";
  for (const auto& row : report.rows) {
    out << format_number(row.hurst, 6) << ',' << method_name(row.method) << ','
        << format_number(row.mean) << ',' << format_number(row.std) << ',' << row.n << ','
        << row.failures << '\n';
  }
}

}  // namespace wavescale
