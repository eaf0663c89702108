#include <doctest.h>

#include <map>
#include <sstream>

#include "dagpart/balance.hpp"
#include "dagpart/errors.hpp"
#include "dagpart/graph_io.hpp"
#include "dagpart/instances.hpp"
#include "dagpart/topology.hpp"
#include "oracles.hpp"

using namespace dagpart;

namespace {

WeightedDigraph parse(const std::string& text) {
  std::istringstream in(text);
  return read_graph(in);
}

std::string dump(const WeightedDigraph& g) {
  std::ostringstream out;
  write_graph(out, g);
  return out.str();
}

}  // namespace

TEST_CASE("reads a three node chain") {
  const WeightedDigraph g = parse("3 2 11\n5 1 10\n7 2 20\n9\n");
  CHECK(g.node_count() == 3);
  CHECK(g.edge_count() == 2);
  CHECK(g.node_weight(0) == 5);
  CHECK(g.node_weight(1) == 7);
  CHECK(g.node_weight(2) == 9);
  CHECK(g.edge_weight(0, 1) == 10);
  CHECK(g.edge_weight(1, 2) == 20);
  CHECK(g.edge_weight(0, 2) == 0);
  CHECK(g.total_node_weight() == 21);
  CHECK(g.max_node_weight() == 9);
  CHECK(g.total_edge_weight() == 30);
}

TEST_CASE("comments and blank lines are skipped") {
  const WeightedDigraph g = parse("% header comment\n2 1 11\n\n1 1 4 % trailing\n% between\n2\n");
  CHECK(g.node_count() == 2);
  CHECK(g.edge_weight(0, 1) == 4);
}

TEST_CASE("two-cycle in a file is rejected with a witness") {
  try {
    parse("2 2 11\n1 1 3\n1 0 4\n");
    FAIL("expected CycleError");
  } catch (const CycleError& e) {
    CHECK(e.cycle() == std::vector<NodeId>{0, 1});
  }
}

TEST_CASE("duplicate edges are merged by summing") {
  const WeightedDigraph g = parse("2 2 11\n1 1 3 1 4\n1\n");
  CHECK(g.edge_count() == 1);
  CHECK(g.edge_weight(0, 1) == 7);
}

TEST_CASE("malformed files raise ParseError with a line number") {
  const auto line_of = [](const std::string& text) -> std::size_t {
    try {
      parse(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("2 1 10\n1 1 1\n1\n") == 1);          // wrong format code
  CHECK(line_of("2 1 11\n1 1 -3\n1\n") == 2);         // negative weight
  CHECK(line_of("2 1 11\n1 1 0\n1\n") == 2);          // zero edge weight
  CHECK(line_of("2 1 11\n1 0 2\n1\n") == 2);          // self-loop
  CHECK(line_of("2 1 11\n1 5 2\n1\n") == 2);          // unknown target
  CHECK(line_of("2 1 11\n1 1\n1\n") == 2);            // dangling successor
  CHECK(line_of("2 2 11\n1 1 2\n1\n") != 0);          // wrong edge count
  CHECK(line_of("3 1 11\n1 1 2\n1\n") != 0);          // missing node line
  CHECK(line_of("2 1 11\n1 1 x\n1\n") == 2);          // not a number
}

TEST_CASE("builder rejects invalid edges") {
  DigraphBuilder b(2);
  CHECK_THROWS_AS(b.add_edge(0, 0, 1), ConfigError);
  CHECK_THROWS_AS(b.add_edge(0, 2, 1), ConfigError);
  CHECK_THROWS_AS(b.add_edge(0, 1, 0), ConfigError);
}

TEST_CASE("adjacency mirrors and degree sum") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const WeightedDigraph g = oracle::random_dag(rng, 1 + trial % 30, 0.2);
    std::size_t degrees = 0;
    for (NodeId v = 0; v < g.node_count(); ++v) {
      degrees += g.out_degree(v) + g.in_degree(v);
      for (const Edge& e : g.out_edges(v)) {
        bool mirrored = false;
        for (const Edge& r : g.in_edges(e.target)) mirrored |= r.target == v && r.weight == e.weight;
        CHECK(mirrored);
      }
    }
    CHECK(degrees == 2 * g.edge_count());
  }
}

TEST_CASE("canonical files round-trip byte for byte") {
  const std::string text = "4 4 11\n5 1 10 2 3\n7 3 20\n0 3 1\n9\n";
  CHECK(dump(parse(text)) == text);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const std::string canonical = dump(oracle::random_dag(rng, 1 + trial % 25, 0.3));
    CHECK(dump(parse(canonical)) == canonical);
  }
}

TEST_CASE("partition files round-trip and validate their length") {
  const Assignment a{0, 2, 1, 1};
  std::ostringstream out;
  write_assignment(out, a);
  std::istringstream in(out.str());
  CHECK(read_assignment(in, 4) == a);
  std::istringstream short_in("0\n1\n");
  CHECK_THROWS_AS(read_assignment(short_in, 4), ParseError);
  std::istringstream bad_in("0\nx\n");
  CHECK_THROWS_AS(read_assignment(bad_in, 2), ParseError);
}

TEST_CASE("random topological order of a single node") {
  const WeightedDigraph g = oracle::make_graph({1}, {});
  Rng rng(1);
  CHECK(random_topological_order(g, rng).order == std::vector<NodeId>{0});
}

TEST_CASE("random topological order is uniform on an edgeless graph") {
  const WeightedDigraph g = oracle::make_graph({1, 1, 1}, {});
  std::map<std::vector<NodeId>, int> counts;
  const int trials = 10000;
  for (int s = 0; s < trials; ++s) {
    Rng rng(derive_seed(99, s));
    ++counts[random_topological_order(g, rng).order];
  }
  REQUIRE(counts.size() == 6);
  double chi2 = 0.0;
  const double expected = trials / 6.0;
  for (const auto& [perm, c] : counts) {
    CHECK(std::abs(c / static_cast<double>(trials) - 1.0 / 6.0) <= 0.02);
    chi2 += (c - expected) * (c - expected) / expected;
  }
  // 99.9% quantile of chi-square with 5 degrees of freedom.
  CHECK(chi2 < 20.52);
}

TEST_CASE("diamond orders start at the source and end at the sink") {
  const WeightedDigraph g = oracle::make_graph({1, 1, 1, 1}, {{0, 1, 1}, {0, 2, 1}, {1, 3, 1}, {2, 3, 1}});
  for (std::uint64_t s = 0; s < 100; ++s) {
    Rng rng(s);
    const TopologicalOrder t = random_topological_order(g, rng);
    CHECK(t.order.front() == 0);
    CHECK(t.order.back() == 3);
  }
}

TEST_CASE("random topological orders are valid and reproducible") {
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 1000; ++trial) {
    const WeightedDigraph g = oracle::random_dag(gen, 1 + trial % 40, 0.15);
    Rng a(trial), b(trial);
    const TopologicalOrder t = random_topological_order(g, a);
    CHECK(oracle::respects_order(g, t.order));
    CHECK(t.is_valid_for(g));
    for (NodeId i = 0; i < t.order.size(); ++i) CHECK(t.position[t.order[i]] == i);
    CHECK(random_topological_order(g, b).order == t.order);
  }
  const WeightedDigraph g = gen_layered({.n = 20, .seed = 4}).graph;
  CHECK(oracle::respects_order(g, canonical_topological_order(g).order));
}

TEST_CASE("acyclicity check on small digraphs") {
  CHECK(check_acyclic({{1}, {2}, {}}).acyclic);
  const AcyclicityResult r = check_acyclic({{1}, {0}});
  CHECK_FALSE(r.acyclic);
  CHECK(r.cycle == std::vector<std::uint32_t>{0, 1});
}

TEST_CASE("block graph with edges in both directions is cyclic") {
  // 0 -> 1 and 2 -> 3 with blocks {0, 3} and {1, 2}.
  const WeightedDigraph g = oracle::make_graph({1, 1, 1, 1}, {{0, 1, 1}, {2, 3, 1}});
  const Assignment blocks{0, 1, 1, 0};
  Adjacency q(2);
  for (NodeId u = 0; u < 4; ++u) {
    for (const Edge& e : g.out_edges(u)) {
      if (blocks[u] != blocks[e.target]) q[blocks[u]].push_back(blocks[e.target]);
    }
  }
  CHECK_FALSE(check_acyclic(q).acyclic);
}

TEST_CASE("acyclicity check agrees with depth-first search") {
  std::mt19937_64 rng(17);
  int cyclic = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const auto adj = oracle::random_digraph(rng, 1 + trial % 12, 0.02 + 0.3 * (trial % 7) / 7.0);
    const AcyclicityResult r = check_acyclic(adj);
    const bool dfs_cycle = oracle::has_cycle_dfs(adj);
    REQUIRE(r.acyclic == !dfs_cycle);
    if (r.acyclic) {
      std::vector<std::size_t> pos(adj.size());
      REQUIRE(r.order.size() == adj.size());
      for (std::size_t i = 0; i < r.order.size(); ++i) pos[r.order[i]] = i;
      for (std::uint32_t u = 0; u < adj.size(); ++u)
        for (std::uint32_t v : adj[u]) CHECK(pos[u] < pos[v]);
    } else {
      ++cyclic;
      // The witness is a closed walk along existing edges without repeats.
      REQUIRE(r.cycle.size() >= 2);
      for (std::size_t i = 0; i < r.cycle.size(); ++i) {
        const auto u = r.cycle[i], v = r.cycle[(i + 1) % r.cycle.size()];
        CHECK(std::find(adj[u].begin(), adj[u].end(), v) != adj[u].end());
      }
      std::vector<std::uint32_t> sorted = r.cycle;
      std::sort(sorted.begin(), sorted.end());
      CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
      CHECK(r.cycle.front() == sorted.front());
    }
  }
  CHECK(cyclic > 100);
}

TEST_CASE("l_max formula") {
  std::vector<Weight> w(4, 25);
  const WeightedDigraph g = oracle::make_graph(w, {});
  CHECK(compute_l_max(g, 4, 0.2).l_max == 30);
  CHECK(compute_l_max(g, 3, 0.0).l_max == 34);
  CHECK(compute_l_max(g, 1, 0.0).l_max == 100);
  CHECK(compute_l_max(gen_subset_sum_instance({1, 2, 3}), 2, 0.0).l_max == 18);
  CHECK(compute_l_max(oracle::make_graph({1, 1, 1}, {}), 2, 0.03).l_max == 2);
}

TEST_CASE("l_max errors") {
  CHECK_THROWS_AS(compute_l_max(oracle::make_graph({50}, {}), 2, 0.0, true), InfeasibleError);
  const WeightedDigraph g = oracle::make_graph({1, 1}, {});
  CHECK_THROWS_AS(compute_l_max(g, 0, 0.0), ConfigError);
  CHECK_THROWS_AS(compute_l_max(g, 2, -0.1), ConfigError);
  // More blocks than nodes is only possible with empty blocks.
  CHECK_THROWS_AS(compute_l_max(g, 3, 1.0), InfeasibleError);
  CHECK_NOTHROW(compute_l_max(g, 3, 1.0, true));
}
