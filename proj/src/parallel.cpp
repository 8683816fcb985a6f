#include "wavescale/parallel.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

namespace wavescale {

int default_thread_count() {
  if (const char* env = std::getenv("WAVESCALE_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n >= 1) return n;
    } catch (const std::exception&) {
    }
  }
  return 1;
}

MeanStd mean_std(const std::vector<double>& values) {
  MeanStd out;
  out.n = values.size();
  if (values.empty()) return out;
  CompensatedSum sum;
  for (double v : values) sum.add(v);
  out.mean = sum.value() / static_cast<double>(values.size());
  if (values.size() > 1) {
    CompensatedSum sq;
    for (double v : values) sq.add((v - out.mean) * (v - out.mean));
    out.std = std::sqrt(sq.value() / static_cast<double>(values.size() - 1));
  }
  return out;
}

}  // namespace wavescale
