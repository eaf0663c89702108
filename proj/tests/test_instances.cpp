#include <doctest.h>

#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "dagpart/errors.hpp"
#include "dagpart/graph_io.hpp"
#include "dagpart/instances.hpp"
#include "dagpart/topology.hpp"
#include "oracles.hpp"

using namespace dagpart;

namespace {

bool weakly_connected(const WeightedDigraph& g) {
  if (g.node_count() == 0) return true;
  std::vector<bool> seen(g.node_count(), false);
  std::vector<NodeId> stack{0};
  seen[0] = true;
  NodeId count = 1;
  while (!stack.empty()) {
    const NodeId u = stack.back();
    stack.pop_back();
    const auto visit = [&](NodeId v) {
      if (!seen[v]) {
        seen[v] = true;
        ++count;
        stack.push_back(v);
      }
    };
    for (const Edge& e : g.out_edges(u)) visit(e.target);
    for (const Edge& e : g.in_edges(u)) visit(e.target);
  }
  return count == g.node_count();
}

std::string dump(const WeightedDigraph& g) {
  std::ostringstream out;
  write_graph(out, g);
  return out.str();
}

WeightedDigraph round_trip(const WeightedDigraph& g) {
  std::istringstream in(dump(g));
  return read_graph(in);
}

std::vector<LayeredDagConfig> all_modes(NodeId n, std::uint64_t seed) {
  std::vector<LayeredDagConfig> out;
  for (LevelCap cap : {LevelCap::high, LevelCap::low})
    for (EdgeDensity d : {EdgeDensity::sparse, EdgeDensity::dense})
      for (Locality l : {Locality::near, Locality::free}) {
        LayeredDagConfig c;
        c.n = n;
        c.seed = seed;
        c.level_cap = cap;
        c.edges = d;
        c.locality = l;
        out.push_back(c);
      }
  return out;
}

}  // namespace

TEST_CASE("layered DAGs are connected and have no dangling interior nodes") {
  for (NodeId n : {10u, 13u, 20u, 64u}) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      for (const LayeredDagConfig& c : all_modes(n, seed)) {
        const LayeredDag d = gen_layered(c);
        const WeightedDigraph& g = d.graph;
        REQUIRE(g.node_count() == n);
        CHECK(weakly_connected(g));
        CHECK(d.inputs >= 1);
        CHECK(d.inputs <= 3);
        CHECK(d.outputs >= 1);
        CHECK(d.outputs <= 3);
        const std::uint32_t last = *std::max_element(d.level.begin(), d.level.end());
        NodeId sources = 0, sinks = 0;
        for (NodeId v = 0; v < n; ++v) {
          if (g.in_degree(v) == 0) ++sources;
          if (g.out_degree(v) == 0) ++sinks;
          if (d.level[v] == 0) {
            CHECK(g.in_degree(v) == 0);
          } else {
            CHECK(g.in_degree(v) >= 1);
          }
          if (d.level[v] == last) {
            CHECK(g.out_degree(v) == 0);
          } else {
            CHECK(g.out_degree(v) >= 1);
          }
          CHECK(g.node_weight(v) >= c.min_node_weight);
          CHECK(g.node_weight(v) <= c.max_node_weight);
          for (const Edge& e : g.out_edges(v)) {
            CHECK(d.level[v] < d.level[e.target]);
            CHECK(e.weight >= 1);
            CHECK(e.weight <= 100);
          }
        }
        CHECK(sources == d.inputs);
        CHECK(sinks == d.outputs);
      }
    }
  }
}

TEST_CASE("near locality bounds the level span of every edge") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    for (const LayeredDagConfig& c : all_modes(10 + seed % 40, seed)) {
      if (c.locality != Locality::near) continue;
      const LayeredDag d = gen_layered(c);
      for (NodeId v = 0; v < c.n; ++v)
        for (const Edge& e : d.graph.out_edges(v)) CHECK(d.level[e.target] - d.level[v] <= c.near_window);
    }
  }
}

TEST_CASE("level sizes respect the cap") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    for (const LayeredDagConfig& c : all_modes(100, seed)) {
      const LayeredDag d = gen_layered(c);
      const NodeId cap = c.level_cap == LevelCap::high ? 10 : 3;
      const std::uint32_t last = *std::max_element(d.level.begin(), d.level.end());
      std::vector<NodeId> size(last + 1, 0);
      for (auto l : d.level) ++size[l];
      CHECK(size[0] == d.inputs);
      CHECK(size[last] == d.outputs);
      for (std::uint32_t l = 1; l < last; ++l) CHECK(size[l] <= cap);
    }
  }
}

TEST_CASE("dense mode draws more predecessors than sparse mode") {
  std::size_t sparse_edges = 0, dense_edges = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    LayeredDagConfig c{.n = 64, .seed = seed, .locality = Locality::free};
    sparse_edges += gen_layered(c).graph.edge_count();
    c.edges = EdgeDensity::dense;
    dense_edges += gen_layered(c).graph.edge_count();
  }
  CHECK(dense_edges > 2 * sparse_edges);
  // Sparse graphs stay close to a spanning structure.
  CHECK(sparse_edges < 50 * 64 * 3 / 2);
}

TEST_CASE("explicit input and output counts") {
  const LayeredDag d = gen_layered({.n = 20, .seed = 1, .inputs = 3, .outputs = 2});
  CHECK(d.inputs == 3);
  CHECK(d.outputs == 2);
  CHECK_THROWS_AS(gen_layered({.n = 4, .inputs = 3, .outputs = 3}), ConfigError);
  CHECK_THROWS_AS(gen_layered({.n = 1}), ConfigError);
  CHECK_THROWS_AS(gen_layered({.n = 10, .min_node_weight = 5, .max_node_weight = 4}), ConfigError);
}

TEST_CASE("generators are deterministic and survive a file round trip") {
  for (const LayeredDagConfig& c : all_modes(17, 9)) {
    const WeightedDigraph g = gen_layered(c).graph;
    CHECK(dump(gen_layered(c).graph) == dump(g));
    CHECK(round_trip(g) == g);
  }
  const WeightedDigraph r = gen_rgg_dag({10, 3, false});
  CHECK(dump(gen_rgg_dag({10, 3, false})) == dump(r));
  CHECK(round_trip(r) == r);
  CHECK(round_trip(gen_pipeline_stand_in()) == gen_pipeline_stand_in());
  CHECK(round_trip(gen_subset_sum_instance({4, 1, 7})) == gen_subset_sum_instance({4, 1, 7}));
  CHECK(round_trip(gen_three_partition_instance({2, 2, 2}, 6)) == gen_three_partition_instance({2, 2, 2}, 6));
}

TEST_CASE("suite covers eight combinations of 25 graphs") {
  const auto suite = layered_suite(1);
  CHECK(suite.size() == 200);
  std::set<std::string> ids;
  std::map<std::string, int> per_combo;
  for (const SuiteInstance& s : suite) {
    ids.insert(s.id);
    CHECK(s.config.n >= 10);
    CHECK(s.config.n <= 20);
    ++per_combo[to_string(s.config.level_cap) + to_string(s.config.edges) + to_string(s.config.locality)];
  }
  CHECK(ids.size() == 200);
  CHECK(per_combo.size() == 8);
  for (const auto& [combo, count] : per_combo) CHECK(count == 25);
  CHECK(suite.front().id == "layered-high-sparse-near-000");
}

TEST_CASE("random geometric DAG basics") {
  const WeightedDigraph g = gen_rgg_dag({10, 1, false});
  CHECK(g.node_count() == 1024);
  CHECK(check_acyclic([&] {
          Adjacency adj(g.node_count());
          for (NodeId u = 0; u < g.node_count(); ++u)
            for (const Edge& e : g.out_edges(u)) adj[u].push_back(e.target);
          return adj;
        }())
            .acyclic);
  for (NodeId u = 0; u < g.node_count(); ++u) {
    CHECK(g.node_weight(u) == 1);
    for (const Edge& e : g.out_edges(u)) {
      CHECK(u < e.target);
      CHECK(e.weight == 1);
    }
  }
  CHECK(gen_rgg_dag({15, 1, false}).node_count() == 32768);
}

TEST_CASE("random geometric DAG edges follow the radius") {
  const RggConfig cfg{12, 8, false};
  const RggPoints pts = rgg_points(cfg);
  const WeightedDigraph g = gen_rgg_dag(cfg);
  const NodeId n = g.node_count();
  const double r = rgg_radius(n);
  CHECK(r == doctest::Approx(0.55 * std::sqrt(std::log(4096.0) / 4096.0)));
  std::size_t sampled = 0;
  double degree_sum = 0.0;
  for (NodeId v = 0; v < n; ++v) {
    for (const Edge& e : g.out_edges(v))
      CHECK(std::hypot(pts.x[v] - pts.x[e.target], pts.y[v] - pts.y[e.target]) < r);
    const bool interior = pts.x[v] > r && pts.x[v] < 1 - r && pts.y[v] > r && pts.y[v] < 1 - r;
    if (!interior) continue;
    ++sampled;
    degree_sum += static_cast<double>(g.in_degree(v) + g.out_degree(v));
  }
  // Brute-force neighbor count for a few nodes.
  for (NodeId v = 0; v < 50; ++v) {
    std::size_t close = 0;
    for (NodeId u = 0; u < n; ++u)
      if (u != v && std::hypot(pts.x[v] - pts.x[u], pts.y[v] - pts.y[u]) < r) ++close;
    CHECK(close == g.in_degree(v) + g.out_degree(v));
  }
  const double expected = std::numbers::pi * r * r * (n - 1);
  REQUIRE(sampled > 1000);
  CHECK(std::abs(degree_sum / sampled - expected) <= 0.2 * expected);
}

TEST_CASE("dropping isolated nodes") {
  const WeightedDigraph full = gen_rgg_dag({10, 4, false});
  const WeightedDigraph kept = gen_rgg_dag({10, 4, true});
  NodeId isolated = 0;
  for (NodeId v = 0; v < full.node_count(); ++v) isolated += full.in_degree(v) + full.out_degree(v) == 0;
  CHECK(kept.node_count() == full.node_count() - isolated);
  CHECK(kept.edge_count() == full.edge_count());
  for (NodeId v = 0; v < kept.node_count(); ++v) CHECK(kept.in_degree(v) + kept.out_degree(v) > 0);
}

TEST_CASE("source-and-sink instance layout") {
  const WeightedDigraph g = gen_subset_sum_instance({1, 2, 3});
  CHECK(std::vector<Weight>(g.node_weights().begin(), g.node_weights().end()) ==
        std::vector<Weight>{12, 2, 4, 6, 12});
  CHECK(g.edge_count() == 6);
  for (NodeId i = 1; i <= 3; ++i) {
    CHECK(g.edge_weight(0, i) == 1);
    CHECK(g.edge_weight(i, 4) == 1);
  }
  const WeightedDigraph one = gen_subset_sum_instance({1});
  CHECK(one.node_count() == 3);
  CHECK(one.edge_count() == 2);
  std::mt19937_64 rng(2);
  for (int t = 0; t < 50; ++t) {
    std::vector<Weight> a(1 + t % 12);
    for (auto& x : a) x = 1 + rng() % 20;
    CHECK(gen_subset_sum_instance(a).edge_count() == 2 * a.size());
  }
  CHECK_THROWS_AS(gen_subset_sum_instance({}), ConfigError);
}

TEST_CASE("clique instance layout") {
  const WeightedDigraph g = gen_three_partition_instance({2, 2, 2}, 6);
  CHECK(g.node_count() == 6);
  CHECK(g.edge_count() == 3);
  const WeightedDigraph h = gen_three_partition_instance({5, 3, 3, 4, 4, 3}, 11);
  CHECK(h.node_count() == 22);
  CHECK(h.edge_count() == 10 + 3 + 3 + 6 + 6 + 3);
  CHECK(h.total_node_weight() == 22);
  CHECK_THROWS_AS(gen_three_partition_instance({2, 2}, 6), ConfigError);        // not a multiple of 3
  CHECK_THROWS_AS(gen_three_partition_instance({3, 3, 3}, 8), ConfigError);     // sum mismatch
  CHECK_THROWS_AS(gen_three_partition_instance({1, 2, 3}, 6), ConfigError);     // outside (A/4, A/2)
}

TEST_CASE("pipeline stand-in shape") {
  const WeightedDigraph g = gen_pipeline_stand_in();
  CHECK(g.node_count() == 72);
  CHECK(g.edge_count() == 93);
  CHECK(weakly_connected(g));
  CHECK(oracle::respects_order(g, canonical_topological_order(g).order));
}
