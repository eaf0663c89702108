#include "dagpart/cli/two_pass.hpp"

#include <cmath>

#include "dagpart/errors.hpp"
#include "dagpart/topology.hpp"

namespace dagpart::cli {
namespace {

BlockId default_blocks(Weight total, Weight capacity) {
  if (capacity == 0) throw ConfigError("capacity must be positive");
  const double needed = std::ceil(static_cast<double>(total) / static_cast<double>(capacity));
  return static_cast<BlockId>(std::max(1.0, std::ceil(1.25 * needed)));
}

// Renumbers used blocks to 0..used-1 in increasing id order.
Assignment compact(const Assignment& blocks, BlockId k, std::size_t& used) {
  std::vector<bool> present(k, false);
  for (BlockId b : blocks) present[b] = true;
  std::vector<BlockId> remap(k, 0);
  used = 0;
  for (BlockId b = 0; b < k; ++b) {
    if (present[b]) remap[b] = static_cast<BlockId>(used++);
  }
  Assignment out(blocks.size());
  for (std::size_t i = 0; i < blocks.size(); ++i) out[i] = remap[blocks[i]];
  return out;
}

// Fills the derived fields from program_of and gang_of.
void finish(const WeightedDigraph& g, TwoPassResult& r) {
  const NodeId n = g.node_count();
  Assignment gang_of_kernel(n);
  for (NodeId v = 0; v < n; ++v) gang_of_kernel[v] = r.gang_of[r.program_of[v]];

  const auto gang_spec =
      BalanceSpec::with_capacity(static_cast<BlockId>(std::max<std::size_t>(r.gang_count, 1)),
                                 g.total_node_weight(), true);
  const Verdict gangs = verify_assignment(g, gang_of_kernel, gang_spec);
  const auto program_spec =
      BalanceSpec::with_capacity(static_cast<BlockId>(std::max<std::size_t>(r.program_count, 1)),
                                 g.total_node_weight(), true);
  const Verdict programs = verify_assignment(g, r.program_of, program_spec);
  r.one_level_cut = programs.cut;
  r.two_level_cut = gangs.cut;
  r.gangs_acyclic = gangs.acyclic && programs.acyclic;

  r.gangs.assign(r.gang_count, {});
  std::vector<std::vector<NodeId>> kernels(r.program_count);
  for (NodeId v = 0; v < n; ++v) kernels[r.program_of[v]].push_back(v);
  for (std::size_t p = 0; p < r.program_count; ++p) r.gangs[r.gang_of[p]].programs.push_back(std::move(kernels[p]));
}

}  // namespace

WeightedDigraph quotient_digraph(const WeightedDigraph& g, const Assignment& blocks, BlockId k, bool unit_weights,
                                 Assignment* renumbered) {
  std::size_t used = 0;
  Assignment ids = compact(blocks, k, used);
  DigraphBuilder b(static_cast<NodeId>(used));
  std::vector<Weight> weight(used, 0);
  for (NodeId v = 0; v < g.node_count(); ++v) weight[ids[v]] += g.node_weight(v);
  for (std::size_t q = 0; q < used; ++q) b.set_node_weight(static_cast<NodeId>(q), unit_weights ? 1 : weight[q]);
  for (NodeId u = 0; u < g.node_count(); ++u) {
    for (const Edge& e : g.out_edges(u)) {
      if (ids[u] != ids[e.target]) b.add_edge(ids[u], ids[e.target], e.weight);
    }
  }
  if (renumbered) *renumbered = ids;
  return std::move(b).build();
}

TwoPassResult run_two_pass(const WeightedDigraph& g, const TwoPassConfig& cfg, Heuristic h, const Budget& budget,
                           std::uint64_t seed, const std::string& instance) {
  if (cfg.program_memory == 0 || cfg.pe_count == 0) throw ConfigError("capacities must be positive");
  const BlockId k1 = cfg.programs.value_or(default_blocks(g.total_node_weight(), cfg.program_memory));
  const auto spec1 = BalanceSpec::with_capacity(k1, cfg.program_memory, cfg.allow_empty_blocks);
  const RestartOutcome first = run_with_budget(g, spec1, h, budget, seed);

  TwoPassResult r;
  r.pass1 = make_report(instance, h, spec1, seed, budget, first);
  const WeightedDigraph programs = quotient_digraph(g, first.best->assignment(), k1, true, &r.program_of);
  r.program_count = programs.node_count();

  const BlockId k2 = cfg.gangs.value_or(default_blocks(programs.total_node_weight(), cfg.pe_count));
  const auto spec2 = BalanceSpec::with_capacity(k2, cfg.pe_count, cfg.allow_empty_blocks);
  const std::uint64_t seed2 = derive_seed(seed, 0x2a11);
  const RestartOutcome second = run_with_budget(programs, spec2, h, budget, seed2);
  r.pass2 = make_report(instance + "/programs", h, spec2, seed2, budget, second);
  quotient_digraph(programs, second.best->assignment(), k2, true, &r.gang_of);
  std::size_t used = 0;
  for (BlockId b : r.gang_of) used = std::max<std::size_t>(used, b + 1);
  r.gang_count = used;

  finish(g, r);
  return r;
}

TwoPassResult naive_two_pass(const WeightedDigraph& g, const TwoPassConfig& cfg) {
  if (cfg.program_memory == 0 || cfg.pe_count == 0) throw ConfigError("capacities must be positive");
  if (g.max_node_weight() > cfg.program_memory) throw InfeasibleError("a kernel exceeds the program memory");
  const TopologicalOrder order = canonical_topological_order(g);
  TwoPassResult r;
  r.program_of.assign(g.node_count(), 0);
  Weight fill = 0;
  BlockId program = 0;
  bool any = false;
  for (NodeId v : order.order) {
    const Weight c = g.node_weight(v);
    if (any && fill + c > cfg.program_memory) {
      ++program;
      fill = 0;
    }
    fill += c;
    any = true;
    r.program_of[v] = program;
  }
  r.program_count = g.node_count() == 0 ? 0 : program + 1;
  r.gang_of.resize(r.program_count);
  for (std::size_t p = 0; p < r.program_count; ++p) r.gang_of[p] = static_cast<BlockId>(p / cfg.pe_count);
  r.gang_count = r.program_count == 0 ? 0 : (r.program_count - 1) / cfg.pe_count + 1;
  r.pass1.heuristic = r.pass2.heuristic = "naive";
  r.pass1.k = static_cast<BlockId>(r.program_count);
  r.pass2.k = static_cast<BlockId>(r.gang_count);
  r.pass1.l_max = cfg.program_memory;
  r.pass2.l_max = cfg.pe_count;
  finish(g, r);
  r.pass1.best_cut = r.one_level_cut;
  r.pass2.best_cut = r.two_level_cut;
  r.pass1.feasible = r.pass2.feasible = r.gangs_acyclic;
  return r;
}

nlohmann::ordered_json to_json(const TwoPassResult& r) {
  nlohmann::ordered_json j;
  j["pass1"] = to_json(r.pass1);
  j["pass2"] = to_json(r.pass2);
  j["programs"] = r.program_count;
  j["gangs_used"] = r.gang_count;
  j["one_level_cut"] = r.one_level_cut;
  j["two_level_cut"] = r.two_level_cut;
  j["gangs_acyclic"] = r.gangs_acyclic;
  auto& gangs = j["gangs"] = nlohmann::ordered_json::array();
  for (const Gang& gang : r.gangs) gangs.push_back(gang.programs);
  return j;
}

}  // namespace dagpart::cli
