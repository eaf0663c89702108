#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

#include "dagpart/heuristics.hpp"

namespace dagpart {

/// Either a wall-clock budget or a fixed number of restarts (bit-reproducible).
struct Budget {
  enum class Kind { wall_clock, restarts };
  Kind kind = Kind::restarts;
  double milliseconds = 0.0;
  std::uint64_t restart_count = 1;

  static Budget wall_clock_ms(double ms) { return {Kind::wall_clock, ms, 0}; }
  static Budget restarts(std::uint64_t count) { return {Kind::restarts, 0.0, count}; }
};

struct RestartOutcome {
  std::optional<Partition> best;
  std::uint64_t best_restart = 0;
  std::uint64_t restarts = 0;              ///< restarts attempted
  std::uint64_t failed_constructions = 0;
  std::vector<Weight> restart_cuts;        ///< cut after each successful restart, in order
  double wall_ms = 0.0;
};

/// Seeds used by restart `index`. Shared by all heuristics so that equal
/// indices start from equal initial partitions.
std::uint64_t construction_seed(std::uint64_t seed, std::uint64_t index);
std::uint64_t search_seed(std::uint64_t seed, std::uint64_t index);

/**
 * Repeats {construct_initial, heuristic} with fresh derived seeds and keeps the
 * lowest-cut result (ties: lowest restart index). In wall-clock mode stops
 * once the budget is used up, after at least one restart. Throws
 * ConstructionInfeasibleError if every restart failed to construct.
 */
RestartOutcome run_with_budget(const WeightedDigraph& g, const BalanceSpec& spec, Heuristic h, const Budget& budget,
                               std::uint64_t seed, const SearchOptions& opts = {});

}  // namespace dagpart
