#include "dagpart/construct.hpp"

#include <string>

#include "dagpart/errors.hpp"
#include "dagpart/random.hpp"

namespace dagpart {
namespace {

/// One packing attempt along `order`; returns false if the result violates balance.
bool pack(const WeightedDigraph& g, const BalanceSpec& spec, const std::vector<NodeId>& order, Rng& rng,
          Assignment& blocks) {
  const BlockId k = spec.k;
  const NodeId n = g.node_count();
  const Weight total = g.total_node_weight();
  const Weight lo = total / k;
  const Weight hi = lo + (total % k != 0 ? 1 : 0);

  std::size_t next = 0;
  Weight assigned = 0;
  Weight cumulative_target = 0;
  for (BlockId b = 0; b + 1 < k; ++b) {
    cumulative_target += (lo == hi || uniform_int<int>(rng, 0, 1) == 0) ? lo : hi;
    const std::size_t blocks_after = k - 1 - b;
    Weight block_weight = 0;
    NodeId block_size = 0;
    while (next < n) {
      const std::size_t remaining = n - next;
      if (!spec.allow_empty && remaining <= blocks_after) break;
      const Weight c = g.node_weight(order[next]);
      bool take;
      if (!spec.allow_empty && block_size == 0) {
        take = true;
      } else if (assigned + c <= cumulative_target) {
        take = true;
      } else {
        // Overshooting is accepted when it lands closer to the running target.
        take = block_weight + c <= spec.l_max && assigned + c - cumulative_target < cumulative_target - assigned;
      }
      if (!take) break;
      blocks[order[next]] = b;
      block_weight += c;
      assigned += c;
      ++block_size;
      ++next;
    }
    if (block_weight > spec.l_max) return false;
  }
  Weight last_weight = 0;
  for (; next < n; ++next) {
    blocks[order[next]] = k - 1;
    last_weight += g.node_weight(order[next]);
  }
  return last_weight <= spec.l_max;
}

/// Fallback along the same order: fill every block up to l_max, keeping one
/// node in reserve for each later block when empty blocks are forbidden.
bool pack_full(const WeightedDigraph& g, const BalanceSpec& spec, const std::vector<NodeId>& order,
               Assignment& blocks) {
  const BlockId k = spec.k;
  const NodeId n = g.node_count();
  std::size_t next = 0;
  for (BlockId b = 0; b < k; ++b) {
    const std::size_t blocks_after = k - 1 - b;
    Weight block_weight = 0;
    while (next < n) {
      if (!spec.allow_empty && n - next <= blocks_after && block_weight > 0) break;
      const Weight c = g.node_weight(order[next]);
      if (block_weight + c > spec.l_max) break;
      blocks[order[next]] = b;
      block_weight += c;
      ++next;
    }
  }
  return next == n;
}

}  // namespace

Partition construct_initial(const WeightedDigraph& g, const BalanceSpec& spec, std::uint64_t seed,
                            int max_retries) {
  check_capacity_feasible(g, spec);
  Assignment blocks(g.node_count(), 0);
  const int attempts = std::max(1, max_retries);
  for (int attempt = 0; attempt < attempts; ++attempt) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(attempt)));
    const auto topo = random_topological_order(g, rng);
    if (!pack(g, spec, topo.order, rng, blocks) && !pack_full(g, spec, topo.order, blocks)) continue;
    Partition p(g, blocks, spec);
    if (p.is_balanced()) return p;
  }
  throw ConstructionInfeasibleError("no contiguous balanced split found in " + std::to_string(attempts) +
                                    " random topological orders (k = " + std::to_string(spec.k) +
                                    ", l_max = " + std::to_string(spec.l_max) + ")");
}

Partition construct_initial(const WeightedDigraph& g, const ConstructConfig& cfg) {
  return construct_initial(g, compute_l_max(g, cfg.k, cfg.epsilon), cfg.seed, cfg.max_retries);
}

}  // namespace dagpart
