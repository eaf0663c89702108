#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dagpart/types.hpp"

namespace dagpart {

struct Edge {
  NodeId target;
  Weight weight;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/**
 * Immutable node- and edge-weighted DAG in compressed sparse row form.
 *
 * Forward and backward adjacency are kept as exact mirrors and each list is
 * sorted by neighbor id. There are no self-loops and no parallel edges.
 * Instances are only created by DigraphBuilder, which validates acyclicity.
 */
class WeightedDigraph {
 public:
  WeightedDigraph() = default;

  NodeId node_count() const noexcept { return static_cast<NodeId>(node_weight_.size()); }
  std::size_t edge_count() const noexcept { return out_edges_.size(); }

  Weight node_weight(NodeId v) const { return node_weight_[v]; }
  std::span<const Weight> node_weights() const noexcept { return node_weight_; }
  Weight total_node_weight() const noexcept { return total_node_weight_; }
  Weight max_node_weight() const noexcept { return max_node_weight_; }
  Weight total_edge_weight() const noexcept { return total_edge_weight_; }

  std::span<const Edge> out_edges(NodeId v) const {
    return {out_edges_.data() + out_offset_[v], out_edges_.data() + out_offset_[v + 1]};
  }
  std::span<const Edge> in_edges(NodeId v) const {
    return {in_edges_.data() + in_offset_[v], in_edges_.data() + in_offset_[v + 1]};
  }
  std::size_t out_degree(NodeId v) const { return out_offset_[v + 1] - out_offset_[v]; }
  std::size_t in_degree(NodeId v) const { return in_offset_[v + 1] - in_offset_[v]; }

  /// Weight of edge (u,v), 0 if absent. O(log deg).
  Weight edge_weight(NodeId u, NodeId v) const;

  friend bool operator==(const WeightedDigraph&, const WeightedDigraph&) = default;

 private:
  friend class DigraphBuilder;

  std::vector<Weight> node_weight_;
  std::vector<std::size_t> out_offset_{0};
  std::vector<std::size_t> in_offset_{0};
  std::vector<Edge> out_edges_;
  std::vector<Edge> in_edges_;
  Weight total_node_weight_ = 0;
  Weight max_node_weight_ = 0;
  Weight total_edge_weight_ = 0;
};

/// Collects nodes and edges, then freezes them into a validated WeightedDigraph.
class DigraphBuilder {
 public:
  explicit DigraphBuilder(NodeId node_count = 0) : node_weight_(node_count, 0) {}

  NodeId add_node(Weight weight);
  void set_node_weight(NodeId v, Weight weight);
  NodeId node_count() const noexcept { return static_cast<NodeId>(node_weight_.size()); }

  /// Parallel edges are merged by summing weights. Throws ConfigError on
  /// self-loops, zero weights, or unknown endpoints.
  void add_edge(NodeId from, NodeId to, Weight weight);

  /// Throws CycleError (with one witness cycle) if the edges contain a cycle.
  WeightedDigraph build() &&;

 private:
  struct RawEdge {
    NodeId from;
    NodeId to;
    Weight weight;
  };

  std::vector<Weight> node_weight_;
  std::vector<RawEdge> edges_;
};

}  // namespace dagpart
