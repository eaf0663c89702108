#include "dagpart/exact.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "dagpart/errors.hpp"

namespace dagpart {
namespace {

constexpr Weight kInfinity = std::numeric_limits<Weight>::max();

class ExactSolver {
 public:
  ExactSolver(const WeightedDigraph& g, const BalanceSpec& spec, const ExactLimits& limits)
      : g_(g), spec_(spec), limits_(limits), k_(spec.k), n_(g.node_count()),
        order_(canonical_topological_order(g).order), block_(n_, spec.k), weight_(k_, 0),
        multiplicity_(std::size_t{k_} * k_, 0), placed_in_(std::size_t{n_} * k_, 0), placed_total_(n_, 0),
        placed_max_(n_, 0), start_(std::chrono::steady_clock::now()) {}

  void seed_incumbent(const Assignment& a, Weight cut) {
    best_cut_ = cut;
    best_ = a;
    found_ = true;
  }

  ExactResult solve() {
    search(0);
    ExactResult r;
    r.explored = explored_;
    r.proven = !aborted_;
    r.found = found_;
    if (found_) {
      r.cut = best_cut_;
      r.assignment = best_;
    }
    return r;
  }

 private:
  bool limits_hit() {
    if (aborted_) return true;
    if (limits_.node_budget && explored_ >= *limits_.node_budget) aborted_ = true;
    if (limits_.time_limit && (explored_ & 1023) == 0 &&
        std::chrono::steady_clock::now() - start_ >= *limits_.time_limit) {
      aborted_ = true;
    }
    return aborted_;
  }

  bool reaches(BlockId from, BlockId to) {
    std::vector<BlockId> stack{from};
    std::vector<bool> seen(k_, false);
    seen[from] = true;
    while (!stack.empty()) {
      const BlockId b = stack.back();
      stack.pop_back();
      if (b == to) return true;
      for (BlockId c = 0; c < k_; ++c) {
        if (!seen[c] && multiplicity_[std::size_t{b} * k_ + c] > 0) {
          seen[c] = true;
          stack.push_back(c);
        }
      }
    }
    return false;
  }

  /// Lower-bound contribution of an unplaced node.
  Weight pending_cost(NodeId v) const { return placed_total_[v] - placed_max_[v]; }

  void search(std::size_t depth) {
    ++explored_;
    if (limits_hit()) return;
    if (depth == n_) {
      if (!spec_.allow_empty && used_ < k_) return;
      if (partial_cut_ < best_cut_) {
        best_cut_ = partial_cut_;
        best_ = block_;
        found_ = true;
      }
      return;
    }
    const NodeId v = order_[depth];
    const Weight c = g_.node_weight(v);
    if (!spec_.allow_empty && k_ - used_ > n_ - depth) return;

    const BlockId open_limit = std::min<BlockId>(used_ + 1, k_);
    std::vector<std::pair<Weight, BlockId>> choices;
    choices.reserve(open_limit);
    for (BlockId b = 0; b < open_limit; ++b) {
      if (weight_[b] + c > spec_.l_max) continue;
      choices.emplace_back(placed_total_[v] - placed_in_[std::size_t{v} * k_ + b], b);
    }
    std::stable_sort(choices.begin(), choices.end(),
                     [](const auto& x, const auto& y) { return x.first < y.first; });

    const Weight own_pending = pending_cost(v);
    std::vector<Weight> saved_max;
    for (const auto& [cost, b] : choices) {
      if (partial_cut_ + cost + (lower_bound_ - own_pending) >= best_cut_) break;  // sorted by cost

      // Place v; incoming edges are all from placed nodes.
      bool cyclic = false;
      std::size_t applied = 0;
      const auto in = g_.in_edges(v);
      for (; applied < in.size(); ++applied) {
        const BlockId a = block_[in[applied].target];
        if (a == b) continue;
        if (multiplicity_[std::size_t{a} * k_ + b]++ == 0 && reaches(b, a)) {
          ++applied;
          cyclic = true;
          break;
        }
      }
      if (!cyclic) {
        place(v, b, c, cost, own_pending, saved_max);
        if (partial_cut_ + lower_bound_ < best_cut_) search(depth + 1);
        unplace(v, b, c, cost, own_pending, saved_max);
      }
      for (std::size_t i = 0; i < applied; ++i) {
        const BlockId a = block_[in[i].target];
        if (a != b) --multiplicity_[std::size_t{a} * k_ + b];
      }
      if (aborted_) return;
    }
  }

  void place(NodeId v, BlockId b, Weight c, Weight cost, Weight own_pending, std::vector<Weight>& saved_max) {
    block_[v] = b;
    weight_[b] += c;
    const bool opened = b == used_;
    if (opened) ++used_;
    opened_.push_back(opened);
    partial_cut_ += cost;
    lower_bound_ -= own_pending;
    saved_max.clear();
    for (const auto& e : g_.out_edges(v)) {
      const NodeId s = e.target;
      saved_max.push_back(placed_max_[s]);
      lower_bound_ -= pending_cost(s);
      placed_total_[s] += e.weight;
      auto& in_b = placed_in_[std::size_t{s} * k_ + b];
      in_b += e.weight;
      placed_max_[s] = std::max(placed_max_[s], in_b);
      lower_bound_ += pending_cost(s);
    }
  }

  void unplace(NodeId v, BlockId b, Weight c, Weight cost, Weight own_pending, const std::vector<Weight>& saved_max) {
    const auto out = g_.out_edges(v);
    for (std::size_t i = out.size(); i-- > 0;) {
      const NodeId s = out[i].target;
      lower_bound_ -= pending_cost(s);
      placed_total_[s] -= out[i].weight;
      placed_in_[std::size_t{s} * k_ + b] -= out[i].weight;
      placed_max_[s] = saved_max[i];
      lower_bound_ += pending_cost(s);
    }
    lower_bound_ += own_pending;
    partial_cut_ -= cost;
    if (opened_.back()) --used_;
    opened_.pop_back();
    weight_[b] -= c;
    block_[v] = k_;
  }

  const WeightedDigraph& g_;
  const BalanceSpec& spec_;
  const ExactLimits& limits_;
  const BlockId k_;
  const NodeId n_;
  std::vector<NodeId> order_;
  Assignment block_;
  std::vector<Weight> weight_;
  std::vector<std::size_t> multiplicity_;
  std::vector<Weight> placed_in_;     ///< [v][b]: weight of edges into v from placed nodes in b
  std::vector<Weight> placed_total_;  ///< weight of edges into v from placed nodes
  std::vector<Weight> placed_max_;    ///< max over b of placed_in_[v][b]
  std::vector<bool> opened_;
  BlockId used_ = 0;
  Weight partial_cut_ = 0;
  Weight lower_bound_ = 0;  ///< sum of pending_cost over unplaced nodes

  Weight best_cut_ = kInfinity;
  Assignment best_;
  bool found_ = false;
  bool aborted_ = false;
  std::uint64_t explored_ = 0;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace

ExactResult solve_exact(const WeightedDigraph& g, const BalanceSpec& spec, const ExactLimits& limits,
                        const Assignment* warm_start) {
  if (g.node_count() > limits.max_nodes) {
    throw ConfigError("exact search supports at most " + std::to_string(limits.max_nodes) + " nodes, graph has " +
                      std::to_string(g.node_count()));
  }
  if (spec.k == 0) throw ConfigError("block count k must be at least 1");
  ExactSolver solver(g, spec, limits);
  if (warm_start) {
    const auto verdict = verify_assignment(g, *warm_start, spec);
    if (!verdict.feasible()) throw ConfigError("warm start assignment is not feasible");
    solver.seed_incumbent(*warm_start, verdict.cut);
  }
  // Trivially infeasible inputs complete the search immediately; the message is clearer this way.
  if (g.max_node_weight() > spec.l_max) {
    throw InfeasibleError("node weight " + std::to_string(g.max_node_weight()) + " exceeds l_max = " +
                          std::to_string(spec.l_max));
  }
  auto result = solver.solve();
  if (result.proven && !result.found) {
    throw InfeasibleError("exhaustive search found no feasible partition (k = " + std::to_string(spec.k) +
                          ", l_max = " + std::to_string(spec.l_max) + ")");
  }
  return result;
}

}  // namespace dagpart
