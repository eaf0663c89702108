#pragma once

#include <span>
#include <vector>

#include "dagpart/balance.hpp"
#include "dagpart/graph.hpp"
#include "dagpart/topology.hpp"

namespace dagpart {

/**
 * Block-level digraph of a partition. For every ordered pair (i,j), i != j,
 * stores the number of graph edges from block i to block j and their total
 * weight. Multiplicities let a move detect creation (0 -> 1) and deletion
 * (1 -> 0) of block edges in O(1).
 */
class QuotientGraph {
 public:
  explicit QuotientGraph(BlockId k = 0) : k_(k), multiplicity_(std::size_t{k} * k, 0), weight_(std::size_t{k} * k, 0) {}

  BlockId block_count() const noexcept { return k_; }
  std::size_t multiplicity(BlockId i, BlockId j) const { return multiplicity_[index(i, j)]; }
  Weight weight(BlockId i, BlockId j) const { return weight_[index(i, j)]; }
  bool has_edge(BlockId i, BlockId j) const { return multiplicity_[index(i, j)] > 0; }
  std::size_t edge_count() const noexcept { return edge_count_; }

  Adjacency adjacency() const;
  AcyclicityResult check_acyclic() const;
  /// True if every block edge (i,j) satisfies i < j.
  bool is_forward_numbered() const;

  friend bool operator==(const QuotientGraph&, const QuotientGraph&) = default;

 private:
  friend class Partition;

  std::size_t index(BlockId i, BlockId j) const { return std::size_t{i} * k_ + j; }
  /// Returns true if the block edge was newly created.
  bool add(BlockId i, BlockId j, Weight w);
  void remove(BlockId i, BlockId j, Weight w);

  BlockId k_;
  std::vector<std::size_t> multiplicity_;
  std::vector<Weight> weight_;
  std::size_t edge_count_ = 0;
};

/// Everything needed to revert one move_node call exactly.
struct MoveRecord {
  NodeId node;
  BlockId from;
  BlockId to;
  bool created_quotient_edge;
};

/**
 * Mutable k-way partition of a WeightedDigraph with incrementally maintained
 * block weights, block sizes, edge cut and quotient graph. The graph must
 * outlive the partition. Infeasible states are representable.
 */
class Partition {
 public:
  /// Computes all aggregates from scratch in O(n + m + k^2). Throws ConfigError
  /// if the assignment size or a block id does not fit.
  Partition(const WeightedDigraph& g, Assignment assignment, BalanceSpec spec);

  const WeightedDigraph& graph() const noexcept { return *graph_; }
  const BalanceSpec& spec() const noexcept { return spec_; }
  BlockId k() const noexcept { return spec_.k; }

  BlockId block(NodeId v) const { return block_[v]; }
  const Assignment& assignment() const noexcept { return block_; }
  Weight block_weight(BlockId b) const { return block_weight_[b]; }
  std::span<const Weight> block_weights() const noexcept { return block_weight_; }
  NodeId block_size(BlockId b) const { return block_size_[b]; }
  /// Number of incident edges (in or out) whose other end lies in another block.
  NodeId external_degree(NodeId v) const { return external_[v]; }
  Weight cut() const noexcept { return cut_; }
  const QuotientGraph& quotient() const noexcept { return quotient_; }

  /// O(deg(v)) update of every aggregate. Legality is the caller's concern.
  MoveRecord move_node(NodeId v, BlockId target);
  void undo(const MoveRecord& record);

  bool is_balanced() const;
  bool has_forbidden_empty_block() const;
  bool is_feasible() const;

  /// Would moving v to `target` keep the balance constraint (capacity and,
  /// unless empty blocks are allowed, a non-empty source)?
  bool move_keeps_balance(NodeId v, BlockId target) const;

  /// Renames block b to new_id[b]; new_id must be a permutation of 0..k-1.
  void relabel(std::span<const BlockId> new_id);

  /// Renumbers blocks along a topological order of the quotient graph
  /// (smallest id first among ready blocks, so ordered partitions keep their
  /// numbering). Throws CyclicQuotientError on a cyclic quotient.
  void normalize_block_order();

  friend bool operator==(const Partition& a, const Partition& b) {
    return a.graph_ == b.graph_ && a.block_ == b.block_ && a.block_weight_ == b.block_weight_ &&
           a.block_size_ == b.block_size_ && a.cut_ == b.cut_ && a.quotient_ == b.quotient_;
  }

 private:
  const WeightedDigraph* graph_;
  BalanceSpec spec_;
  Assignment block_;
  std::vector<Weight> block_weight_;
  std::vector<NodeId> block_size_;
  std::vector<NodeId> external_;
  Weight cut_ = 0;
  QuotientGraph quotient_;
};

inline Partition build_partition(const WeightedDigraph& g, Assignment assignment, const BalanceSpec& spec) {
  return Partition(g, std::move(assignment), spec);
}

/// Returns a copy of p with topologically numbered blocks.
Partition normalize_block_order(Partition p);

/**
 * Per-node edge-weight aggregates against blocks:
 *   c_in(b)  = weight of edges (u, v) with u in block b,
 *   c_out(b) = weight of edges (v, u) with u in block b.
 * load() costs O(deg(v)) and resets only the entries touched before.
 */
class GainTable {
 public:
  explicit GainTable(BlockId k) : c_in_(k, 0), c_out_(k, 0), seen_(k, false) {}

  void load(const Partition& p, NodeId v);

  NodeId node() const noexcept { return node_; }
  Weight c_in(BlockId b) const { return c_in_[b]; }
  Weight c_out(BlockId b) const { return c_out_[b]; }
  /// Blocks with a nonzero aggregate, in first-seen order.
  std::span<const BlockId> touched() const noexcept { return touched_; }

  /// Cut decrease when moving the loaded node from `from` to `to`:
  /// c_in(to) - c_out(from) + c_out(to) - c_in(from).
  Gain gain(BlockId from, BlockId to) const {
    return static_cast<Gain>(c_in_[to] + c_out_[to]) - static_cast<Gain>(c_in_[from] + c_out_[from]);
  }

 private:
  NodeId node_ = 0;
  std::vector<Weight> c_in_;
  std::vector<Weight> c_out_;
  std::vector<bool> seen_;
  std::vector<BlockId> touched_;
};

/// Gain of moving v to every block; the entry for v's own block is 0.
std::vector<Gain> gains_for(const Partition& p, NodeId v);

/// From-scratch feasibility report for an assignment, independent of Partition.
struct Verdict {
  Weight cut = 0;
  std::vector<Weight> block_weights;
  Weight l_max = 0;
  bool balanced = true;
  std::vector<BlockId> overloaded_blocks;
  std::vector<BlockId> empty_blocks;  ///< only reported as violations when empty blocks are not allowed
  bool acyclic = true;
  std::vector<BlockId> cycle;

  bool feasible() const noexcept { return balanced && acyclic; }
};

/// Linear-time check in n + m + k^2. Throws ConfigError on malformed assignments.
Verdict verify_assignment(const WeightedDigraph& g, std::span<const BlockId> assignment, const BalanceSpec& spec);

}  // namespace dagpart
