#include "wavescale/best_basis.hpp"

#include <cmath>

namespace wavescale {

double shannon_cost(std::span<const double> x) {
  double cost = 0.0;
  for (double v : x) {
    const double e = v * v;
    if (e > 0.0) cost -= e * std::log(e);
  }
  return cost;
}

BasisSelection best_basis(const PacketTree& tree) {
  const int top = tree.signal_level();
  const int bottom = tree.bottom_level();

  // best[i] / marked[i] for the nodes of the level currently being visited.
  std::vector<double> best;
  std::vector<char> marked;
  // For each visited level (bottom up), whether each node was marked.
  std::vector<std::vector<char>> marks(static_cast<std::size_t>(tree.depth()) + 1);

  {
    const std::size_t count = tree.node_count(bottom);
    best.resize(count);
    for (std::size_t n = 0; n < count; ++n) best[n] = shannon_cost(tree.node(bottom, n));
    marks[0].assign(count, 1);
  }

  for (int level = bottom + 1; level <= top; ++level) {
    const std::size_t count = tree.node_count(level);
    std::vector<double> parent_best(count);
    std::vector<char> parent_marked(count, 0);
    for (std::size_t n = 0; n < count; ++n) {
      const double own = shannon_cost(tree.node(level, n));
      const double children = best[2 * n] + best[2 * n + 1];
      if (own <= children) {
        parent_best[n] = own;
        parent_marked[n] = 1;
      } else {
        parent_best[n] = children;
      }
    }
    best = std::move(parent_best);
    marks[static_cast<std::size_t>(level - bottom)] = std::move(parent_marked);
  }

  // Top-down: keep the first marked node on each root-to-leaf path.
  BasisSelection out;
  out.total_cost = best[0];
  std::vector<NodeId> stack{{top, 0}};
  while (!stack.empty()) {
    const NodeId id = stack.back();
    stack.pop_back();
    if (marks[static_cast<std::size_t>(id.level - bottom)][id.index]) {
      out.nodes.push_back(id);
      continue;
    }
    stack.push_back({id.level - 1, 2 * id.index + 1});
    stack.push_back({id.level - 1, 2 * id.index});
  }
  return out;
}

bool is_dyadic_cover(std::span<const NodeId> nodes, int signal_level, int bottom_level) {
  if (bottom_level > signal_level) return false;
  // Count, per leaf of the bottom level, how many selected nodes contain it.
  const std::size_t leaves = std::size_t{1} << (signal_level - bottom_level);
  std::vector<int> hits(leaves, 0);
  for (const auto& id : nodes) {
    if (id.level < bottom_level || id.level > signal_level) return false;
    const int shift = id.level - bottom_level;
    const std::size_t width = std::size_t{1} << shift;
    if (id.index >= (std::size_t{1} << (signal_level - id.level))) return false;
    for (std::size_t leaf = id.index * width; leaf < (id.index + 1) * width; ++leaf) ++hits[leaf];
  }
  for (int h : hits)
    if (h != 1) return false;
  return true;
}

std::vector<double> basis_coefficients(const PacketTree& tree, const BasisSelection& basis) {
  std::vector<double> out;
  out.reserve(tree.signal_length());
  for (const auto& id : basis.nodes) {
    auto coeffs = tree.node(id.level, id.index);
    out.insert(out.end(), coeffs.begin(), coeffs.end());
  }
  return out;
}

}  // namespace wavescale
