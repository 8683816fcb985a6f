#pragma once

#include <Eigen/Core>

namespace wavescale {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Class labels: cases (e.g. cancer) are 1, controls are 0.
inline constexpr int kControl = 0;
inline constexpr int kCase = 1;

}  // namespace wavescale
