#include "dagpart/graph.hpp"

#include <algorithm>
#include <string>

#include "dagpart/errors.hpp"
#include "dagpart/topology.hpp"

namespace dagpart {

Weight WeightedDigraph::edge_weight(NodeId u, NodeId v) const {
  const auto edges = out_edges(u);
  const auto it = std::lower_bound(edges.begin(), edges.end(), v,
                                   [](const Edge& e, NodeId t) { return e.target < t; });
  return (it != edges.end() && it->target == v) ? it->weight : 0;
}

NodeId DigraphBuilder::add_node(Weight weight) {
  node_weight_.push_back(weight);
  return static_cast<NodeId>(node_weight_.size() - 1);
}

void DigraphBuilder::set_node_weight(NodeId v, Weight weight) {
  if (v >= node_weight_.size()) {
    throw ConfigError("node " + std::to_string(v) + " out of range");
  }
  node_weight_[v] = weight;
}

void DigraphBuilder::add_edge(NodeId from, NodeId to, Weight weight) {
  const auto n = node_weight_.size();
  if (from >= n || to >= n) {
    throw ConfigError("edge (" + std::to_string(from) + "," + std::to_string(to) +
                      ") references a node outside 0.." + std::to_string(n) + "-1");
  }
  if (from == to) {
    throw ConfigError("self-loop on node " + std::to_string(from));
  }
  if (weight == 0) {
    throw ConfigError("edge (" + std::to_string(from) + "," + std::to_string(to) +
                      ") has zero weight");
  }
  edges_.push_back({from, to, weight});
}

WeightedDigraph DigraphBuilder::build() && {
  std::sort(edges_.begin(), edges_.end(), [](const RawEdge& a, const RawEdge& b) {
    return a.from != b.from ? a.from < b.from : a.to < b.to;
  });
  std::vector<RawEdge> merged;
  merged.reserve(edges_.size());
  for (const auto& e : edges_) {
    if (!merged.empty() && merged.back().from == e.from && merged.back().to == e.to) {
      merged.back().weight += e.weight;
    } else {
      merged.push_back(e);
    }
  }
  edges_.clear();

  const NodeId n = static_cast<NodeId>(node_weight_.size());
  Adjacency succ(n);
  for (const auto& e : merged) succ[e.from].push_back(e.to);
  if (auto check = check_acyclic(succ); !check.acyclic) {
    std::string msg = "graph contains a cycle:";
    for (auto v : check.cycle) msg += " " + std::to_string(v);
    throw CycleError(msg, std::move(check.cycle));
  }

  WeightedDigraph g;
  g.node_weight_ = std::move(node_weight_);
  g.out_offset_.assign(n + 1, 0);
  g.in_offset_.assign(n + 1, 0);
  for (const auto& e : merged) {
    ++g.out_offset_[e.from + 1];
    ++g.in_offset_[e.to + 1];
  }
  for (NodeId v = 0; v < n; ++v) {
    g.out_offset_[v + 1] += g.out_offset_[v];
    g.in_offset_[v + 1] += g.in_offset_[v];
  }
  g.out_edges_.resize(merged.size());
  g.in_edges_.resize(merged.size());
  std::vector<std::size_t> in_fill(g.in_offset_.begin(), g.in_offset_.end() - 1);
  // merged is sorted by (from, to), so both CSR arrays come out sorted by neighbor.
  for (std::size_t i = 0; i < merged.size(); ++i) {
    const auto& e = merged[i];
    g.out_edges_[i] = {e.to, e.weight};
    g.in_edges_[in_fill[e.to]++] = {e.from, e.weight};
    g.total_edge_weight_ += e.weight;
  }
  for (auto c : g.node_weight_) {
    g.total_node_weight_ += c;
    g.max_node_weight_ = std::max(g.max_node_weight_, c);
  }
  return g;
}

}  // namespace dagpart
