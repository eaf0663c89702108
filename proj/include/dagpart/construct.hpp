#pragma once

#include <cstdint>

#include "dagpart/partition.hpp"

namespace dagpart {

struct ConstructConfig {
  std::uint64_t seed = 0;
  BlockId k = 2;
  double epsilon = 0.03;
  int max_retries = 50;
};

/**
 * Random feasible initial partition: contiguous segments of a random
 * topological order. Each of the first k-1 blocks gets a weight target drawn
 * uniformly from {floor(c(V)/k), ceil(c(V)/k)}; block boundaries follow the
 * running sum of these targets, so a block that stops short of its target
 * hands the slack to the next one. The last block takes the remainder.
 *
 * Every resulting quotient edge points from a lower to a higher block id.
 * Tries up to max_retries random orders, then throws
 * ConstructionInfeasibleError. Deterministic per seed.
 */
Partition construct_initial(const WeightedDigraph& g, const BalanceSpec& spec, std::uint64_t seed,
                            int max_retries = 50);

Partition construct_initial(const WeightedDigraph& g, const ConstructConfig& cfg);

}  // namespace dagpart
