#pragma once

#include <optional>
#include <vector>

#include "dagpart/cli/report.hpp"

namespace dagpart::cli {

struct TwoPassConfig {
  Weight program_memory = 0;  ///< pass 1 capacity, in node weight units
  Weight pe_count = 0;        ///< pass 2 capacity, in programs
  /// Block counts; default to 1.25x the minimum needed for the capacity.
  std::optional<BlockId> programs;
  std::optional<BlockId> gangs;
  bool allow_empty_blocks = true;
};

struct Gang {
  std::vector<std::vector<NodeId>> programs;  ///< kernels of each program in the gang
};

struct TwoPassResult {
  RunReport pass1;
  RunReport pass2;
  Assignment program_of;   ///< kernel -> program (non-empty programs, renumbered in order)
  Assignment gang_of;      ///< program -> gang (non-empty gangs, renumbered in order)
  std::size_t program_count = 0;
  std::size_t gang_count = 0;
  Weight one_level_cut = 0;  ///< communication between programs
  Weight two_level_cut = 0;  ///< communication between gangs
  bool gangs_acyclic = false;
  std::vector<Gang> gangs;
};

/// Weighted quotient graph of an assignment restricted to non-empty blocks,
/// which are renumbered in increasing id order. `renumbered` maps each node
/// to its new block. Node weights are the block weights unless unit_weights.
WeightedDigraph quotient_digraph(const WeightedDigraph& g, const Assignment& blocks, BlockId k, bool unit_weights,
                                 Assignment* renumbered = nullptr);

TwoPassResult run_two_pass(const WeightedDigraph& g, const TwoPassConfig& cfg, Heuristic h, const Budget& budget,
                           std::uint64_t seed, const std::string& instance = "graph");

/// Reference grouping: kernels packed first-fit along the canonical
/// topological order into programs, then every pe_count consecutive programs
/// form a gang.
TwoPassResult naive_two_pass(const WeightedDigraph& g, const TwoPassConfig& cfg);

nlohmann::ordered_json to_json(const TwoPassResult& r);

}  // namespace dagpart::cli
