#pragma once

#include "dagpart/graph.hpp"

namespace dagpart {

/**
 * Balance constraint for a k-way partition: every block weight must be at
 * most l_max. By default l_max = (1+epsilon) * ceil(c(V)/k), rounded down to
 * an integer since all weights are integral.
 *
 * allow_empty permits blocks without nodes. When false, every one of the k
 * blocks must hold at least one node for a partition to be feasible.
 */
struct BalanceSpec {
  BlockId k = 1;
  double epsilon = 0.0;
  Weight l_max = 0;
  bool allow_empty = false;

  /// Explicit capacity, independent of the graph's total weight.
  static BalanceSpec with_capacity(BlockId k, Weight l_max, bool allow_empty);
};

/// ceil(c(V)/k) * (1+epsilon), floored. Throws ConfigError on k == 0 or
/// epsilon < 0, and InfeasibleError if a single node exceeds l_max.
BalanceSpec compute_l_max(const WeightedDigraph& g, BlockId k, double epsilon,
                          bool allow_empty = false);

/// Throws InfeasibleError if no partition of g can satisfy spec.
void check_capacity_feasible(const WeightedDigraph& g, const BalanceSpec& spec);

}  // namespace dagpart
