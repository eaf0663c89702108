#include "dagpart/restarts.hpp"

#include "dagpart/construct.hpp"
#include "dagpart/errors.hpp"

namespace dagpart {

std::uint64_t construction_seed(std::uint64_t seed, std::uint64_t index) { return derive_seed(seed, 2 * index); }
std::uint64_t search_seed(std::uint64_t seed, std::uint64_t index) { return derive_seed(seed, 2 * index + 1); }

RestartOutcome run_with_budget(const WeightedDigraph& g, const BalanceSpec& spec, Heuristic h, const Budget& budget,
                               std::uint64_t seed, const SearchOptions& opts) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  const auto elapsed_ms = [&] {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  };
  if (budget.kind == Budget::Kind::wall_clock && !(budget.milliseconds > 0.0)) {
    throw ConfigError("time budget must be positive");
  }
  if (budget.kind == Budget::Kind::restarts && budget.restart_count == 0) {
    throw ConfigError("restart count must be positive");
  }
  check_capacity_feasible(g, spec);

  RestartOutcome out;
  std::string last_failure;
  for (std::uint64_t index = 0;; ++index) {
    if (budget.kind == Budget::Kind::restarts) {
      if (index >= budget.restart_count) break;
    } else if (index > 0 && elapsed_ms() >= budget.milliseconds) {
      break;
    }
    ++out.restarts;
    try {
      Partition initial = construct_initial(g, spec, construction_seed(seed, index));
      Rng rng(search_seed(seed, index));
      Partition result = improve(h, std::move(initial), rng, opts);
      out.restart_cuts.push_back(result.cut());
      if (!out.best || result.cut() < out.best->cut()) {
        out.best = std::move(result);
        out.best_restart = index;
      }
    } catch (const ConstructionInfeasibleError& e) {
      ++out.failed_constructions;
      last_failure = e.what();
    }
  }
  out.wall_ms = elapsed_ms();
  if (!out.best) {
    throw ConstructionInfeasibleError("all " + std::to_string(out.restarts) + " restarts failed: " + last_failure);
  }
  return out;
}

}  // namespace dagpart
