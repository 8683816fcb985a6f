#pragma once

#include <compare>
#include <span>
#include <vector>

#include "wavescale/transform.hpp"

namespace wavescale {

struct NodeId {
  int level = 0;
  std::size_t index = 0;
  auto operator<=>(const NodeId&) const = default;
};

struct BasisSelection {
  std::vector<NodeId> nodes;  // ordered left to right across the frequency axis
  double total_cost = 0.0;
};

/// Non-normalized Shannon entropy -sum x_i^2 ln(x_i^2), with 0 ln 0 = 0.
double shannon_cost(std::span<const double> x);

/// Coifman-Wickerhauser bottom-up search over the packet table.
///
/// Every bottom node starts marked. Moving up one level at a time, a parent is
/// marked when its own cost does not exceed the best cost of its two children;
/// otherwise it inherits that children's cost. The topmost marked nodes form
/// the returned basis, whose total cost is minimal over all admissible covers.
/// Equal costs keep the parent.
BasisSelection best_basis(const PacketTree& tree);

/// True when the nodes tile the frequency axis of a tree with the given signal
/// and bottom levels exactly once.
bool is_dyadic_cover(std::span<const NodeId> nodes, int signal_level, int bottom_level);

/// Concatenated coefficients of the selected nodes.
std::vector<double> basis_coefficients(const PacketTree& tree, const BasisSelection& basis);

}  // namespace wavescale
