#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dagpart/graph.hpp"

namespace dagpart {

// ---------------------------------------------------------------------------
// Layered random DAGs

enum class LevelCap { high, low };       ///< max level size sqrt(n) or n^(1/4)
enum class EdgeDensity { sparse, dense };  ///< minimal edges, or up to sqrt(n) predecessors per node
enum class Locality { near, free };      ///< predecessors from the closest levels only, or from any level

struct LayeredDagConfig {
  NodeId n = 16;
  std::uint64_t seed = 0;
  LevelCap level_cap = LevelCap::high;
  EdgeDensity edges = EdgeDensity::sparse;
  Locality locality = Locality::near;
  /// Input and output node counts; 0 draws each uniformly from [1, 3].
  NodeId inputs = 0;
  NodeId outputs = 0;
  /// Level distance an edge may span in Locality::near.
  std::uint32_t near_window = 2;
  Weight min_node_weight = 1000;
  Weight max_node_weight = 30000;
  Weight min_edge_weight = 1;
  Weight max_edge_weight = 100;
};

struct LayeredDag {
  WeightedDigraph graph;
  std::vector<std::uint32_t> level;  ///< level of each node; inputs at 0, outputs at the last level
  NodeId inputs = 0;
  NodeId outputs = 0;
};

/**
 * Builds levels one after another, each of random size in [1, cap]; every
 * new node picks random predecessors among earlier levels. Inputs form the
 * first level and outputs the last. A repair pass gives every non-output
 * node a successor and joins weak components, so the result is a weakly
 * connected DAG whose interior nodes all have in- and out-degree >= 1.
 * Throws ConfigError on contradictory bounds.
 */
LayeredDag gen_layered(const LayeredDagConfig& cfg);

std::string to_string(LevelCap v);
std::string to_string(EdgeDensity v);
std::string to_string(Locality v);

// ---------------------------------------------------------------------------
// Random geometric graphs

struct RggConfig {
  std::uint32_t exponent = 15;  ///< n = 2^exponent
  std::uint64_t seed = 0;
  bool drop_isolated = false;
};

/// Connection radius used for rgg instances: 0.55 * sqrt(ln n / n).
double rgg_radius(NodeId n);

struct RggPoints {
  std::vector<double> x;
  std::vector<double> y;
};

/// The 2^exponent points behind gen_rgg_dag(cfg), indexed by node id before
/// any isolated nodes are dropped.
RggPoints rgg_points(const RggConfig& cfg);

/// Random points in the unit square joined when closer than rgg_radius(n),
/// directed from the smaller to the larger id, unit weights.
WeightedDigraph gen_rgg_dag(const RggConfig& cfg);

// ---------------------------------------------------------------------------
// Hardness constructions

/// Source s (id 0), one node per a_i (ids 1..n), sink t (id n+1). Weights
/// c(s) = c(t) = A = sum 2 a_i, c(v_i) = 2 a_i; edges s->v_i and v_i->t of weight 1.
WeightedDigraph gen_subset_sum_instance(const std::vector<Weight>& a);

/// One directed clique (u -> v for u < v) of a_i unit-weight nodes per number,
/// no edges between cliques. Requires 3 | count, sum = (count/3) * threshold
/// and threshold/4 < a_i < threshold/2; throws ConfigError otherwise.
WeightedDigraph gen_three_partition_instance(const std::vector<Weight>& a, Weight threshold);

// ---------------------------------------------------------------------------
// Pipeline stand-in

/// Deterministic 72-node / 93-edge image pipeline in the shape of a pyramid
/// filter: Gaussian pyramid, Laplacian levels, per-level remapping and a
/// collapse chain. Node weights are program sizes in bytes, edge weights
/// buffer sizes in kilopixels.
WeightedDigraph gen_pipeline_stand_in();

// ---------------------------------------------------------------------------
// Small-instance suite

struct SuiteInstance {
  std::string id;
  LayeredDagConfig config;
};

/// 8 parameter combinations x `per_combination` seeds, n uniform in [min_n, max_n].
std::vector<SuiteInstance> layered_suite(std::uint64_t seed, std::uint32_t per_combination = 25, NodeId min_n = 10,
                                         NodeId max_n = 20);

}  // namespace dagpart
