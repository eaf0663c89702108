#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "dagpart/errors.hpp"
#include "dagpart/instances.hpp"
#include "dagpart/random.hpp"

namespace dagpart {
namespace {

NodeId integer_root(NodeId n, double exponent) {
  auto r = static_cast<NodeId>(std::floor(std::pow(static_cast<double>(n), exponent) + 1e-9));
  return std::max<NodeId>(1, r);
}

class UnionFind {
 public:
  explicit UnionFind(NodeId n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), NodeId{0}); }
  NodeId find(NodeId v) {
    while (parent_[v] != v) v = parent_[v] = parent_[parent_[v]];
    return v;
  }
  void unite(NodeId a, NodeId b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<NodeId> parent_;
};

}  // namespace

std::string to_string(LevelCap v) { return v == LevelCap::high ? "high" : "low"; }
std::string to_string(EdgeDensity v) { return v == EdgeDensity::sparse ? "sparse" : "dense"; }
std::string to_string(Locality v) { return v == Locality::near ? "near" : "free"; }

LayeredDag gen_layered(const LayeredDagConfig& cfg) {
  const NodeId n = cfg.n;
  if (n < 2) throw ConfigError("layered DAG needs at least 2 nodes");
  if (cfg.min_node_weight > cfg.max_node_weight) throw ConfigError("node weight range is empty");
  if (cfg.min_edge_weight == 0 || cfg.min_edge_weight > cfg.max_edge_weight) {
    throw ConfigError("edge weight range must be non-empty and positive");
  }
  if (cfg.near_window == 0) throw ConfigError("near window must be at least one level");
  if (cfg.inputs > 3 || cfg.outputs > 3) throw ConfigError("input/output counts are limited to [1, 3]");

  Rng rng(derive_seed(cfg.seed, 0x1a7e4edULL));
  NodeId inputs = cfg.inputs;
  NodeId outputs = cfg.outputs;
  if (inputs == 0) inputs = uniform_int<NodeId>(rng, 1, std::min<NodeId>(3, n / 2));
  if (outputs == 0) outputs = uniform_int<NodeId>(rng, 1, std::min<NodeId>(3, n - inputs));
  if (inputs + outputs > n) throw ConfigError("inputs + outputs exceed the node count");

  const NodeId level_cap = cfg.level_cap == LevelCap::high ? integer_root(n, 0.5) : integer_root(n, 0.25);
  const NodeId pred_cap = cfg.edges == EdgeDensity::dense ? integer_root(n, 0.5) : 1;

  // Level boundaries: level l holds nodes [first[l], first[l+1]).
  std::vector<NodeId> first{0, inputs};
  NodeId middle = n - inputs - outputs;
  while (middle > 0) {
    const NodeId size = std::min(middle, uniform_int<NodeId>(rng, 1, level_cap));
    first.push_back(first.back() + size);
    middle -= size;
  }
  first.push_back(n);
  const auto levels = static_cast<std::uint32_t>(first.size() - 1);
  const std::uint32_t last = levels - 1;

  std::vector<std::uint32_t> level(n);
  for (std::uint32_t l = 0; l < levels; ++l) {
    for (NodeId v = first[l]; v < first[l + 1]; ++v) level[v] = l;
  }
  const auto window_below = [&](std::uint32_t l) -> std::pair<NodeId, NodeId> {
    const std::uint32_t lo = cfg.locality == Locality::near && l > cfg.near_window ? l - cfg.near_window : 0;
    return {first[lo], first[l]};
  };
  const auto window_above = [&](std::uint32_t l) -> std::pair<NodeId, NodeId> {
    const std::uint32_t hi = cfg.locality == Locality::near ? std::min(last, l + cfg.near_window) : last;
    return {first[l + 1], first[hi + 1]};
  };

  std::set<std::pair<NodeId, NodeId>> edges;
  std::vector<NodeId> out_degree(n, 0);
  std::vector<NodeId> candidates;
  for (NodeId v = inputs; v < n; ++v) {
    const auto [lo, hi] = window_below(level[v]);
    candidates.resize(hi - lo);
    std::iota(candidates.begin(), candidates.end(), lo);
    const NodeId count = uniform_int<NodeId>(rng, 1, std::min<NodeId>(pred_cap, hi - lo));
    for (NodeId i = 0; i < count; ++i) {
      std::swap(candidates[i], candidates[uniform_int<NodeId>(rng, i, hi - lo - 1)]);
      edges.emplace(candidates[i], v);
      ++out_degree[candidates[i]];
    }
  }
  for (NodeId v = 0; v < first[last]; ++v) {
    if (out_degree[v] > 0) continue;
    const auto [lo, hi] = window_above(level[v]);
    const NodeId target = uniform_int<NodeId>(rng, lo, hi - 1);
    edges.emplace(v, target);
    ++out_degree[v];
  }

  UnionFind components(n);
  for (const auto& [u, v] : edges) components.unite(u, v);
  for (NodeId root = 1; root < n; ++root) {
    if (components.find(root) == components.find(0)) continue;
    // Link the component of `root` into the component of node 0 with an edge
    // from a lower level, preferring pairs inside the locality window.
    bool linked = false;
    for (int pass = 0; pass < 2 && !linked; ++pass) {
      for (NodeId v = root; v < n && !linked; ++v) {
        if (components.find(v) != components.find(root) || level[v] == 0) continue;
        const auto [lo, hi] = pass == 0 ? window_below(level[v]) : std::pair<NodeId, NodeId>{0, first[level[v]]};
        candidates.clear();
        for (NodeId u = lo; u < hi; ++u) {
          if (components.find(u) == components.find(0)) candidates.push_back(u);
        }
        if (candidates.empty()) continue;
        const NodeId u = candidates[uniform_int<std::size_t>(rng, 0, candidates.size() - 1)];
        edges.emplace(u, v);
        components.unite(u, v);
        linked = true;
      }
    }
    if (!linked) throw ConfigError("could not connect layered DAG components");
  }

  DigraphBuilder builder(n);
  for (NodeId v = 0; v < n; ++v) {
    builder.set_node_weight(v, uniform_int<Weight>(rng, cfg.min_node_weight, cfg.max_node_weight));
  }
  for (const auto& [u, v] : edges) {
    builder.add_edge(u, v, uniform_int<Weight>(rng, cfg.min_edge_weight, cfg.max_edge_weight));
  }
  return {std::move(builder).build(), std::move(level), inputs, outputs};
}

std::vector<SuiteInstance> layered_suite(std::uint64_t seed, std::uint32_t per_combination, NodeId min_n,
                                         NodeId max_n) {
  if (min_n < 2 || min_n > max_n) throw ConfigError("invalid suite size range");
  std::vector<SuiteInstance> suite;
  for (int combo = 0; combo < 8; ++combo) {
    for (std::uint32_t s = 0; s < per_combination; ++s) {
      LayeredDagConfig cfg;
      cfg.level_cap = (combo & 1) ? LevelCap::low : LevelCap::high;
      cfg.edges = (combo & 2) ? EdgeDensity::dense : EdgeDensity::sparse;
      cfg.locality = (combo & 4) ? Locality::free : Locality::near;
      cfg.seed = derive_seed(seed, static_cast<std::uint64_t>(combo) * 100000 + s);
      Rng rng(cfg.seed);
      cfg.n = uniform_int<NodeId>(rng, min_n, max_n);
      char index[16];
      std::snprintf(index, sizeof index, "%03u", s);
      suite.push_back({"layered-" + to_string(cfg.level_cap) + "-" + to_string(cfg.edges) + "-" +
                           to_string(cfg.locality) + "-" + index,
                       cfg});
    }
  }
  return suite;
}

}  // namespace dagpart
