#include "dagpart/cli/report.hpp"

namespace dagpart::cli {

RunReport make_report(const std::string& instance, Heuristic h, const BalanceSpec& spec, std::uint64_t seed,
                      const Budget& budget, const RestartOutcome& outcome) {
  RunReport r;
  r.instance = instance;
  r.heuristic = heuristic_id(h);
  r.k = spec.k;
  r.epsilon = spec.epsilon;
  r.l_max = spec.l_max;
  r.seed = seed;
  r.budget = budget;
  r.restarts = outcome.restarts;
  r.failed_constructions = outcome.failed_constructions;
  r.wall_ms = outcome.wall_ms;
  if (outcome.best) {
    const Partition& p = *outcome.best;
    const Verdict v = verify_assignment(p.graph(), p.assignment(), spec);
    r.best_cut = v.cut;
    r.block_weights = v.block_weights;
    r.feasible = v.feasible();
  }
  return r;
}

nlohmann::ordered_json budget_json(const Budget& b) {
  nlohmann::ordered_json j;
  if (b.kind == Budget::Kind::wall_clock) {
    j["ms"] = b.milliseconds;
  } else {
    j["restarts"] = b.restart_count;
  }
  return j;
}

nlohmann::ordered_json to_json(const RunReport& r) {
  nlohmann::ordered_json j;
  j["instance"] = r.instance;
  j["heuristic"] = r.heuristic;
  j["k"] = r.k;
  j["epsilon"] = r.epsilon;
  j["l_max"] = r.l_max;
  j["seed"] = r.seed;
  j["budget"] = budget_json(r.budget);
  j["restarts"] = r.restarts;
  j["failed_constructions"] = r.failed_constructions;
  j["best_cut"] = r.best_cut;
  j["block_weights"] = r.block_weights;
  j["feasible"] = r.feasible;
  j["wall_ms"] = r.wall_ms;
  return j;
}

}  // namespace dagpart::cli
