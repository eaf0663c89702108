#pragma once

#include <chrono>
#include <cstdint>
#include <optional>

#include "dagpart/partition.hpp"

namespace dagpart {

struct ExactLimits {
  NodeId max_nodes = 20;
  std::optional<std::chrono::milliseconds> time_limit;
  std::optional<std::uint64_t> node_budget;  ///< search-tree nodes
};

struct ExactResult {
  Weight cut = 0;
  Assignment assignment;
  std::uint64_t explored = 0;
  bool proven = false;  ///< search completed; cut is optimal
  bool found = false;   ///< assignment holds a feasible solution
};

/**
 * Exhaustive depth-first search over block assignments in a fixed
 * topological node order. Prunes on block capacity, on a lower bound
 * (partial cut plus, for every unplaced node, its cheapest placement
 * against already placed predecessors), on cycles in the partial quotient
 * graph, and on block-label symmetry (a node may only open the lowest unused
 * block).
 *
 * `warm_start`, if given, must be feasible; it seeds the incumbent.
 * Throws ConfigError if n > limits.max_nodes and InfeasibleError if the
 * search completes without a feasible assignment.
 */
ExactResult solve_exact(const WeightedDigraph& g, const BalanceSpec& spec, const ExactLimits& limits = {},
                        const Assignment* warm_start = nullptr);

}  // namespace dagpart
