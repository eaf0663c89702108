#include <numeric>
#include <string>

#include "dagpart/errors.hpp"
#include "dagpart/instances.hpp"

namespace dagpart {

WeightedDigraph gen_subset_sum_instance(const std::vector<Weight>& a) {
  if (a.empty()) throw ConfigError("subset sum input must be non-empty");
  const auto count = static_cast<NodeId>(a.size());
  Weight total = 0;
  for (auto x : a) {
    if (x == 0) throw ConfigError("subset sum values must be positive");
    total += 2 * x;
  }
  DigraphBuilder builder;
  const NodeId s = builder.add_node(total);
  for (auto x : a) builder.add_node(2 * x);
  const NodeId t = builder.add_node(total);
  for (NodeId i = 1; i <= count; ++i) {
    builder.add_edge(s, i, 1);
    builder.add_edge(i, t, 1);
  }
  return std::move(builder).build();
}

WeightedDigraph gen_three_partition_instance(const std::vector<Weight>& a, Weight threshold) {
  if (a.empty() || a.size() % 3 != 0) throw ConfigError("3-partition needs 3k numbers");
  const Weight groups = a.size() / 3;
  const Weight sum = std::accumulate(a.begin(), a.end(), Weight{0});
  if (sum != groups * threshold) {
    throw ConfigError("3-partition numbers sum to " + std::to_string(sum) + ", expected k * A = " +
                      std::to_string(groups * threshold));
  }
  DigraphBuilder builder;
  for (auto size : a) {
    // A/4 < a_i < A/2, compared in integers.
    if (!(4 * size > threshold && 2 * size < threshold)) {
      throw ConfigError("3-partition value " + std::to_string(size) + " outside (A/4, A/2)");
    }
    const NodeId base = builder.node_count();
    for (Weight i = 0; i < size; ++i) builder.add_node(1);
    for (NodeId u = base; u < builder.node_count(); ++u) {
      for (NodeId v = u + 1; v < builder.node_count(); ++v) builder.add_edge(u, v, 1);
    }
  }
  return std::move(builder).build();
}

}  // namespace dagpart
