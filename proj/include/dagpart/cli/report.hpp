#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "dagpart/restarts.hpp"

namespace dagpart::cli {

struct RunReport {
  std::string instance;
  std::string heuristic;
  BlockId k = 0;
  double epsilon = 0.0;
  Weight l_max = 0;
  std::uint64_t seed = 0;
  Budget budget;
  std::uint64_t restarts = 0;
  std::uint64_t failed_constructions = 0;
  Weight best_cut = 0;
  std::vector<Weight> block_weights;
  bool feasible = false;
  double wall_ms = 0.0;
};

/// Builds a report from a restart run; `feasible` comes from an independent
/// from-scratch verification of the best assignment, not from solver state.
RunReport make_report(const std::string& instance, Heuristic h, const BalanceSpec& spec, std::uint64_t seed,
                      const Budget& budget, const RestartOutcome& outcome);

nlohmann::ordered_json to_json(const RunReport& r);
nlohmann::ordered_json budget_json(const Budget& b);

}  // namespace dagpart::cli
