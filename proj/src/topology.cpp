#include "dagpart/topology.hpp"

#include <algorithm>
#include <functional>
#include <queue>

namespace dagpart {

TopologicalOrder TopologicalOrder::from_order(std::vector<NodeId> order) {
  TopologicalOrder t;
  t.position.assign(order.size(), 0);
  for (NodeId i = 0; i < order.size(); ++i) t.position[order[i]] = i;
  t.order = std::move(order);
  return t;
}

bool TopologicalOrder::is_valid_for(const WeightedDigraph& g) const {
  const NodeId n = g.node_count();
  if (order.size() != n || position.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (NodeId i = 0; i < n; ++i) {
    const NodeId v = order[i];
    if (v >= n || seen[v] || position[v] != i) return false;
    seen[v] = true;
  }
  for (NodeId u = 0; u < n; ++u) {
    for (const auto& e : g.out_edges(u)) {
      if (position[u] >= position[e.target]) return false;
    }
  }
  return true;
}

TopologicalOrder random_topological_order(const WeightedDigraph& g, Rng& rng) {
  const NodeId n = g.node_count();
  std::vector<std::size_t> indegree(n);
  std::vector<NodeId> ready;
  for (NodeId v = 0; v < n; ++v) {
    indegree[v] = g.in_degree(v);
    if (indegree[v] == 0) ready.push_back(v);
  }
  std::vector<NodeId> order;
  order.reserve(n);
  while (!ready.empty()) {
    const auto pick = uniform_int<std::size_t>(rng, 0, ready.size() - 1);
    const NodeId v = ready[pick];
    ready[pick] = ready.back();
    ready.pop_back();
    order.push_back(v);
    for (const auto& e : g.out_edges(v)) {
      if (--indegree[e.target] == 0) ready.push_back(e.target);
    }
  }
  return TopologicalOrder::from_order(std::move(order));
}

TopologicalOrder canonical_topological_order(const WeightedDigraph& g) {
  const NodeId n = g.node_count();
  std::vector<std::size_t> indegree(n);
  std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>> ready;
  for (NodeId v = 0; v < n; ++v) {
    indegree[v] = g.in_degree(v);
    if (indegree[v] == 0) ready.push(v);
  }
  std::vector<NodeId> order;
  order.reserve(n);
  while (!ready.empty()) {
    const NodeId v = ready.top();
    ready.pop();
    order.push_back(v);
    for (const auto& e : g.out_edges(v)) {
      if (--indegree[e.target] == 0) ready.push(e.target);
    }
  }
  return TopologicalOrder::from_order(std::move(order));
}

AcyclicityResult check_acyclic(const Adjacency& successors) {
  const auto n = static_cast<std::uint32_t>(successors.size());
  std::vector<std::size_t> indegree(n, 0);
  for (const auto& out : successors) {
    for (auto v : out) ++indegree[v];
  }
  std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, std::greater<>> ready;
  for (std::uint32_t v = 0; v < n; ++v) {
    if (indegree[v] == 0) ready.push(v);
  }
  AcyclicityResult result;
  result.order.reserve(n);
  while (!ready.empty()) {
    const auto u = ready.top();
    ready.pop();
    result.order.push_back(u);
    for (auto v : successors[u]) {
      if (--indegree[v] == 0) ready.push(v);
    }
  }
  if (result.order.size() == n) return result;

  result.acyclic = false;
  // Every residual node keeps a residual predecessor, so walking predecessors
  // from any residual node must revisit a node.
  std::vector<std::int64_t> residual_pred(n, -1);
  for (std::uint32_t u = 0; u < n; ++u) {
    if (indegree[u] == 0) continue;
    for (auto v : successors[u]) {
      if (indegree[v] > 0 && residual_pred[v] < 0) residual_pred[v] = u;
    }
  }
  std::uint32_t start = 0;
  while (indegree[start] == 0) ++start;
  std::vector<std::int64_t> visit_index(n, -1);
  std::vector<std::uint32_t> walk;
  std::uint32_t cur = start;
  while (visit_index[cur] < 0) {
    visit_index[cur] = static_cast<std::int64_t>(walk.size());
    walk.push_back(cur);
    cur = static_cast<std::uint32_t>(residual_pred[cur]);
  }
  std::vector<std::uint32_t> cycle(walk.begin() + visit_index[cur], walk.end());
  std::reverse(cycle.begin(), cycle.end());
  std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
  result.cycle = std::move(cycle);
  return result;
}

}  // namespace dagpart
