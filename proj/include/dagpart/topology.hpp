#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dagpart/graph.hpp"
#include "dagpart/random.hpp"

namespace dagpart {

struct TopologicalOrder {
  std::vector<NodeId> order;
  std::vector<NodeId> position;  ///< inverse of order

  static TopologicalOrder from_order(std::vector<NodeId> order);
  bool is_valid_for(const WeightedDigraph& g) const;
};

/// Kahn's algorithm where each step extracts a uniformly random node of the
/// current zero-indegree set.
TopologicalOrder random_topological_order(const WeightedDigraph& g, Rng& rng);

/// Kahn's algorithm extracting the smallest ready id first. Deterministic.
TopologicalOrder canonical_topological_order(const WeightedDigraph& g);

/// Successor lists of an arbitrary digraph on nodes 0..size()-1.
using Adjacency = std::vector<std::vector<std::uint32_t>>;

struct AcyclicityResult {
  bool acyclic = true;
  /// One cycle in edge order, rotated to start at its smallest id. Empty when acyclic.
  std::vector<std::uint32_t> cycle;
  /// A topological order when acyclic, else the Kahn prefix.
  std::vector<std::uint32_t> order;

  explicit operator bool() const noexcept { return acyclic; }
};

/// Kahn's algorithm (smallest ready id first). On failure, back-walks the
/// residual subgraph to extract a witness cycle.
AcyclicityResult check_acyclic(const Adjacency& successors);

}  // namespace dagpart
