#include "dagpart/balance.hpp"

#include <cmath>
#include <string>

#include "dagpart/errors.hpp"

namespace dagpart {

BalanceSpec BalanceSpec::with_capacity(BlockId k, Weight l_max, bool allow_empty) {
  if (k == 0) throw ConfigError("block count k must be at least 1");
  BalanceSpec spec;
  spec.k = k;
  spec.l_max = l_max;
  spec.allow_empty = allow_empty;
  return spec;
}

BalanceSpec compute_l_max(const WeightedDigraph& g, BlockId k, double epsilon, bool allow_empty) {
  if (k == 0) throw ConfigError("block count k must be at least 1");
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw ConfigError("imbalance epsilon must be a finite value >= 0");
  }
  const Weight total = g.total_node_weight();
  const Weight avg_ceil = total / k + (total % k != 0 ? 1 : 0);
  // Relative nudge so that e.g. 1.2 * 25 lands on 30 despite 1.2 being inexact.
  const long double scaled = static_cast<long double>(avg_ceil) * (1.0L + epsilon) * (1.0L + 1e-12L);

  BalanceSpec spec;
  spec.k = k;
  spec.epsilon = epsilon;
  spec.l_max = static_cast<Weight>(std::floor(scaled));
  spec.allow_empty = allow_empty;
  check_capacity_feasible(g, spec);
  return spec;
}

void check_capacity_feasible(const WeightedDigraph& g, const BalanceSpec& spec) {
  if (g.max_node_weight() > spec.l_max) {
    throw InfeasibleError("node weight " + std::to_string(g.max_node_weight()) +
                          " exceeds block capacity l_max = " + std::to_string(spec.l_max));
  }
  if (static_cast<long double>(spec.l_max) * spec.k < static_cast<long double>(g.total_node_weight())) {
    throw InfeasibleError("total weight " + std::to_string(g.total_node_weight()) + " exceeds k * l_max");
  }
  if (!spec.allow_empty && g.node_count() < spec.k) {
    throw InfeasibleError("fewer nodes (" + std::to_string(g.node_count()) + ") than non-empty blocks (" +
                          std::to_string(spec.k) + ")");
  }
}

}  // namespace dagpart
