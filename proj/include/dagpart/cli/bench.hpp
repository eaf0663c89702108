#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dagpart/exact.hpp"
#include "dagpart/restarts.hpp"

namespace dagpart::cli {

/// Worker count from DAGPART_THREADS, else hardware concurrency (at least 1).
unsigned worker_count();

// ---------------------------------------------------------------------------
// Gap to optimum on small instances

struct BenchInstance {
  std::string id;
  WeightedDigraph graph;
};

struct ExactRecord {
  bool feasible = false;
  bool proven = false;
  Weight opt_cut = 0;
  std::uint64_t explored = 0;
  double wall_ms = 0.0;
};

/// Keyed by "<instance>|k=<k>|eps=<epsilon>".
using ExactCache = std::map<std::string, ExactRecord>;
std::string exact_cache_key(const std::string& instance, BlockId k, double epsilon);
ExactCache read_exact_cache(std::istream& in);
void write_exact_cache(std::ostream& out, const ExactCache& cache);

struct GapConfig {
  std::vector<BlockId> ks{2, 4};
  std::vector<double> epsilons{0.2, 0.3, 0.4, 0.5};
  std::vector<Heuristic> heuristics{std::begin(kAllHeuristics), std::end(kAllHeuristics)};
  Budget budget = Budget::wall_clock_ms(10.0);
  std::uint64_t seed = 1;
  ExactLimits exact_limits{};
  unsigned threads = 1;
};

struct GapDetail {
  std::string instance;
  NodeId n = 0;
  std::size_t m = 0;
  BlockId k = 0;
  double epsilon = 0.0;
  Weight opt_cut = 0;
  std::string heuristic;
  bool found = false;  ///< heuristic produced a feasible partition
  Weight cut = 0;
  std::uint64_t restarts = 0;
};

struct GapCell {
  BlockId k = 0;
  double epsilon = 0.0;
  std::string heuristic;
  std::size_t instances = 0;       ///< feasible, proven, optimum > 0, heuristic found a solution
  double mean_gap_percent = 0.0;
  double min_gap_percent = 0.0;
  std::size_t zero_opt_instances = 0;
  std::size_t zero_opt_hits = 0;
  std::size_t infeasible = 0;      ///< no feasible partition exists
  std::size_t heuristic_failures = 0;
};

struct GapTable {
  std::vector<GapCell> cells;
  std::vector<GapDetail> details;
  std::size_t exact_solved = 0;  ///< solves not served from cache
};

/// Exact solves missing from `cache` are computed (warm-started from a short
/// FM run) and added to it. Throws Error if an exact solve is unproven.
GapTable bench_table1(const std::vector<BenchInstance>& instances, const GapConfig& cfg, ExactCache& cache);

void write_gap_summary_csv(std::ostream& out, const GapTable& t);
/// Pivot shaped like the published table: one row per (k, epsilon), one column per heuristic.
void write_gap_pivot_csv(std::ostream& out, const GapTable& t);
void write_gap_details_csv(std::ostream& out, const GapTable& t);

// ---------------------------------------------------------------------------
// Scaling on random geometric graphs

struct ScalingConfig {
  std::vector<std::uint32_t> exponents{15, 16, 17, 18};
  BlockId k = 8;
  double epsilon = 0.03;
  std::uint32_t passes = 100;
  std::vector<Heuristic> heuristics{std::begin(kAllHeuristics), std::end(kAllHeuristics)};
  std::uint64_t seed = 1;
};

struct ScalingRow {
  std::uint32_t exponent = 0;
  NodeId n = 0;
  std::size_t m = 0;
  std::string heuristic;
  std::uint32_t passes = 0;
  double mean_ms_per_pass = 0.0;   ///< thread CPU time of the local search; construction excluded
  double mean_construct_ms = 0.0;
  double mean_cut = 0.0;
  Weight best_cut = 0;
  double relative_cut_reduction = 0.0;  ///< (mean SM cut - mean cut) / mean SM cut
};

/// Every heuristic starts pass p from the same initial partition. Runs
/// single-threaded so timings are comparable; passes cycle through the sizes.
std::vector<ScalingRow> bench_scaling(const ScalingConfig& cfg, std::ostream* progress = nullptr);

void write_scaling_csv(std::ostream& out, const std::vector<ScalingRow>& rows);

}  // namespace dagpart::cli
