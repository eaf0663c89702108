#include "dagpart/partition.hpp"

#include <algorithm>
#include <string>

#include "dagpart/errors.hpp"

namespace dagpart {

// ---------------------------------------------------------------------------
// QuotientGraph

bool QuotientGraph::add(BlockId i, BlockId j, Weight w) {
  const auto idx = index(i, j);
  weight_[idx] += w;
  if (multiplicity_[idx]++ == 0) {
    ++edge_count_;
    return true;
  }
  return false;
}

void QuotientGraph::remove(BlockId i, BlockId j, Weight w) {
  const auto idx = index(i, j);
  weight_[idx] -= w;
  if (--multiplicity_[idx] == 0) --edge_count_;
}

Adjacency QuotientGraph::adjacency() const {
  Adjacency adj(k_);
  for (BlockId i = 0; i < k_; ++i) {
    for (BlockId j = 0; j < k_; ++j) {
      if (multiplicity_[index(i, j)] > 0) adj[i].push_back(j);
    }
  }
  return adj;
}

AcyclicityResult QuotientGraph::check_acyclic() const { return dagpart::check_acyclic(adjacency()); }

bool QuotientGraph::is_forward_numbered() const {
  for (BlockId i = 0; i < k_; ++i) {
    for (BlockId j = 0; j <= i; ++j) {
      if (multiplicity_[index(i, j)] > 0) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Partition

Partition::Partition(const WeightedDigraph& g, Assignment assignment, BalanceSpec spec)
    : graph_(&g), spec_(spec), block_(std::move(assignment)), block_weight_(spec.k, 0),
      block_size_(spec.k, 0), external_(g.node_count(), 0), quotient_(spec.k) {
  if (spec_.k == 0) throw ConfigError("block count k must be at least 1");
  if (block_.size() != g.node_count()) {
    throw ConfigError("assignment covers " + std::to_string(block_.size()) + " nodes, graph has " +
                      std::to_string(g.node_count()));
  }
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const BlockId b = block_[v];
    if (b >= spec_.k) {
      throw ConfigError("node " + std::to_string(v) + " assigned to block " + std::to_string(b) +
                        " but k = " + std::to_string(spec_.k));
    }
    block_weight_[b] += g.node_weight(v);
    ++block_size_[b];
  }
  for (NodeId u = 0; u < g.node_count(); ++u) {
    for (const auto& e : g.out_edges(u)) {
      const BlockId bu = block_[u];
      const BlockId bv = block_[e.target];
      if (bu != bv) {
        cut_ += e.weight;
        quotient_.add(bu, bv, e.weight);
        ++external_[u];
        ++external_[e.target];
      }
    }
  }
}

MoveRecord Partition::move_node(NodeId v, BlockId target) {
  const BlockId from = block_[v];
  // Additions before removals, so a block pair that merely changes
  // multiplicity never passes through zero and the flag reflects net creation.
  bool created = false;
  for (const auto& e : graph_->in_edges(v)) {
    const BlockId bu = block_[e.target];
    if (bu != target) {
      created |= quotient_.add(bu, target, e.weight);
      cut_ += e.weight;
    }
  }
  for (const auto& e : graph_->out_edges(v)) {
    const BlockId bw = block_[e.target];
    if (bw != target) {
      created |= quotient_.add(target, bw, e.weight);
      cut_ += e.weight;
    }
  }
  for (const auto& e : graph_->in_edges(v)) {
    const BlockId bu = block_[e.target];
    if (bu != from) {
      quotient_.remove(bu, from, e.weight);
      cut_ -= e.weight;
    }
  }
  for (const auto& e : graph_->out_edges(v)) {
    const BlockId bw = block_[e.target];
    if (bw != from) {
      quotient_.remove(from, bw, e.weight);
      cut_ -= e.weight;
    }
  }
  if (from != target) {
    NodeId ext = 0;
    const auto touch = [&](NodeId u) {
      const BlockId b = block_[u];
      if (b == from) ++external_[u];
      if (b == target) --external_[u];
      ext += b != target;
    };
    for (const auto& e : graph_->in_edges(v)) touch(e.target);
    for (const auto& e : graph_->out_edges(v)) touch(e.target);
    external_[v] = ext;
  }
  const Weight c = graph_->node_weight(v);
  block_weight_[from] -= c;
  block_weight_[target] += c;
  --block_size_[from];
  ++block_size_[target];
  block_[v] = target;
  return {v, from, target, created};
}

void Partition::undo(const MoveRecord& record) {
  if (block_[record.node] != record.to) {
    throw InvariantViolation("undo of node " + std::to_string(record.node) + " out of order");
  }
  move_node(record.node, record.from);
}

bool Partition::is_balanced() const {
  for (BlockId b = 0; b < spec_.k; ++b) {
    if (block_weight_[b] > spec_.l_max) return false;
  }
  return !has_forbidden_empty_block();
}

bool Partition::has_forbidden_empty_block() const {
  if (spec_.allow_empty) return false;
  return std::find(block_size_.begin(), block_size_.end(), NodeId{0}) != block_size_.end();
}

bool Partition::is_feasible() const { return is_balanced() && quotient_.check_acyclic().acyclic; }

bool Partition::move_keeps_balance(NodeId v, BlockId target) const {
  if (block_weight_[target] + graph_->node_weight(v) > spec_.l_max) return false;
  return spec_.allow_empty || block_size_[block_[v]] > 1;
}

void Partition::relabel(std::span<const BlockId> new_id) {
  const BlockId k = spec_.k;
  if (new_id.size() != k) throw ConfigError("relabel map has wrong size");
  std::vector<bool> hit(k, false);
  for (auto b : new_id) {
    if (b >= k || hit[b]) throw ConfigError("relabel map is not a permutation");
    hit[b] = true;
  }
  for (auto& b : block_) b = new_id[b];
  std::vector<Weight> weight(k);
  std::vector<NodeId> size(k);
  QuotientGraph q(k);
  for (BlockId b = 0; b < k; ++b) {
    weight[new_id[b]] = block_weight_[b];
    size[new_id[b]] = block_size_[b];
    for (BlockId c = 0; c < k; ++c) {
      const auto idx = quotient_.index(b, c);
      const auto nidx = q.index(new_id[b], new_id[c]);
      q.multiplicity_[nidx] = quotient_.multiplicity_[idx];
      q.weight_[nidx] = quotient_.weight_[idx];
    }
  }
  q.edge_count_ = quotient_.edge_count_;
  block_weight_ = std::move(weight);
  block_size_ = std::move(size);
  quotient_ = std::move(q);
}

void Partition::normalize_block_order() {
  auto check = quotient_.check_acyclic();
  if (!check.acyclic) {
    std::string msg = "quotient graph is cyclic:";
    for (auto b : check.cycle) msg += " " + std::to_string(b);
    throw CyclicQuotientError(msg, std::move(check.cycle));
  }
  std::vector<BlockId> new_id(spec_.k);
  bool identity = true;
  for (BlockId pos = 0; pos < spec_.k; ++pos) {
    new_id[check.order[pos]] = pos;
    identity &= check.order[pos] == pos;
  }
  if (!identity) relabel(new_id);
}

Partition normalize_block_order(Partition p) {
  p.normalize_block_order();
  return p;
}

// ---------------------------------------------------------------------------
// GainTable

void GainTable::load(const Partition& p, NodeId v) {
  for (auto b : touched_) {
    c_in_[b] = 0;
    c_out_[b] = 0;
    seen_[b] = false;
  }
  touched_.clear();
  node_ = v;
  const auto& g = p.graph();
  for (const auto& e : g.in_edges(v)) {
    const BlockId b = p.block(e.target);
    if (!seen_[b]) {
      seen_[b] = true;
      touched_.push_back(b);
    }
    c_in_[b] += e.weight;
  }
  for (const auto& e : g.out_edges(v)) {
    const BlockId b = p.block(e.target);
    if (!seen_[b]) {
      seen_[b] = true;
      touched_.push_back(b);
    }
    c_out_[b] += e.weight;
  }
}

std::vector<Gain> gains_for(const Partition& p, NodeId v) {
  GainTable table(p.k());
  table.load(p, v);
  const BlockId own = p.block(v);
  std::vector<Gain> gains(p.k(), 0);
  for (BlockId j = 0; j < p.k(); ++j) {
    if (j != own) gains[j] = table.gain(own, j);
  }
  return gains;
}

// ---------------------------------------------------------------------------
// Verification

Verdict verify_assignment(const WeightedDigraph& g, std::span<const BlockId> assignment, const BalanceSpec& spec) {
  if (assignment.size() != g.node_count()) {
    throw ConfigError("assignment covers " + std::to_string(assignment.size()) + " nodes, graph has " +
                      std::to_string(g.node_count()));
  }
  const BlockId k = spec.k;
  Verdict verdict;
  verdict.l_max = spec.l_max;
  verdict.block_weights.assign(k, 0);
  std::vector<NodeId> size(k, 0);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (assignment[v] >= k) {
      throw ConfigError("node " + std::to_string(v) + " assigned to block " + std::to_string(assignment[v]) +
                        " but k = " + std::to_string(k));
    }
    verdict.block_weights[assignment[v]] += g.node_weight(v);
    ++size[assignment[v]];
  }
  for (BlockId b = 0; b < k; ++b) {
    if (verdict.block_weights[b] > spec.l_max) verdict.overloaded_blocks.push_back(b);
    if (size[b] == 0) verdict.empty_blocks.push_back(b);
  }
  verdict.balanced = verdict.overloaded_blocks.empty() && (spec.allow_empty || verdict.empty_blocks.empty());

  std::vector<bool> linked(std::size_t{k} * k, false);
  Adjacency adj(k);
  for (NodeId u = 0; u < g.node_count(); ++u) {
    for (const auto& e : g.out_edges(u)) {
      const BlockId a = assignment[u];
      const BlockId b = assignment[e.target];
      if (a == b) continue;
      verdict.cut += e.weight;
      if (!linked[std::size_t{a} * k + b]) {
        linked[std::size_t{a} * k + b] = true;
        adj[a].push_back(b);
      }
    }
  }
  auto check = check_acyclic(adj);
  verdict.acyclic = check.acyclic;
  verdict.cycle = std::move(check.cycle);
  return verdict;
}

}  // namespace dagpart
