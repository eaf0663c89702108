#include <algorithm>
#include <numeric>
#include <vector>

#include "heuristics_common.hpp"

namespace dagpart {
namespace {

using detail::accepts_move;
using detail::BestCandidate;

std::vector<NodeId> all_nodes(const Partition& p) {
  std::vector<NodeId> nodes(p.graph().node_count());
  std::iota(nodes.begin(), nodes.end(), NodeId{0});
  return nodes;
}

void check_key_decreased(const SearchKey& before, const Partition& p) {
  if (!(search_key(p) < before)) detail::invariant_failed("accepted move did not decrease (cut, sum of squares)");
}

}  // namespace

Partition simple_moves(Partition p, Rng& rng, const SearchOptions& opts, SearchStats* stats) {
  p.normalize_block_order();
  const BlockId k = p.k();
  if (k < 2) return p;
  GainTable table(k);
  auto order = all_nodes(p);
  SearchStats local;
  for (bool moved = true; moved;) {
    moved = false;
    ++local.rounds;
    detail::shuffle_visit_order(order, rng);
    for (const NodeId v : order) {
      if (detail::interior(p, v)) continue;
      const BlockId i = p.block(v);
      table.load(p, v);
      BestCandidate best;
      // A node without predecessors in its own block cannot create a back edge by moving down one block.
      if (i > 0 && table.c_in(i) == 0) {
        const Gain gain = static_cast<Gain>(table.c_in(i - 1)) - static_cast<Gain>(table.c_out(i));
        if (accepts_move(p, v, i - 1, gain)) best.offer(i - 1, gain, rng);
      }
      if (i + 1 < k && table.c_out(i) == 0) {
        const Gain gain = static_cast<Gain>(table.c_out(i + 1)) - static_cast<Gain>(table.c_in(i));
        if (accepts_move(p, v, i + 1, gain)) best.offer(i + 1, gain, rng);
      }
      if (best.empty()) continue;
      const Weight cut_before = p.cut();
      const SearchKey key_before = opts.check_invariants ? search_key(p) : SearchKey{};
      if (opts.check_invariants && best.gain() != table.gain(i, best.target())) {
        detail::invariant_failed("adjacent-block gain disagrees with the general gain formula");
      }
      p.move_node(v, best.target());
      ++local.moves;
      moved = true;
      if (opts.check_invariants) {
        detail::check_after_move(p, cut_before, best.gain(), true);
        check_key_decreased(key_before, p);
      }
    }
  }
  if (stats) *stats = local;
  return p;
}

Partition advanced_moves(Partition p, Rng& rng, const SearchOptions& opts, SearchStats* stats) {
  p.normalize_block_order();
  const BlockId k = p.k();
  if (k < 2) return p;
  GainTable table(k);
  auto order = all_nodes(p);
  SearchStats local;
  for (bool moved = true; moved;) {
    moved = false;
    ++local.rounds;
    detail::shuffle_visit_order(order, rng);
    for (const NodeId v : order) {
      if (detail::interior(p, v)) continue;
      const BlockId i = p.block(v);
      const auto [lo, hi] = detail::am_window(p, v);
      if (lo > i || i > hi) detail::invariant_failed("block numbering is not topological at node " + std::to_string(v));
      if (lo == i && i == hi) continue;
      table.load(p, v);
      BestCandidate best;
      for (BlockId j = lo; j <= hi; ++j) {
        if (j == i) continue;
        const Gain gain = table.gain(i, j);
        if (accepts_move(p, v, j, gain)) best.offer(j, gain, rng);
      }
      if (best.empty()) continue;
      const Weight cut_before = p.cut();
      const SearchKey key_before = opts.check_invariants ? search_key(p) : SearchKey{};
      p.move_node(v, best.target());
      ++local.moves;
      moved = true;
      if (opts.check_invariants) {
        detail::check_after_move(p, cut_before, best.gain(), true);
        check_key_decreased(key_before, p);
      }
    }
  }
  if (stats) *stats = local;
  return p;
}

Partition global_moves(Partition p, Rng& rng, const SearchOptions& opts, SearchStats* stats) {
  p.normalize_block_order();
  const BlockId k = p.k();
  if (k < 2) return p;
  GainTable table(k);
  auto order = all_nodes(p);
  struct Candidate {
    BlockId target;
    Gain gain;
    std::uint64_t tiebreak;
  };
  std::vector<Candidate> candidates;
  SearchStats local;
  for (bool moved = true; moved;) {
    moved = false;
    ++local.rounds;
    detail::shuffle_visit_order(order, rng);
    for (const NodeId v : order) {
      if (detail::interior(p, v)) continue;
      const BlockId i = p.block(v);
      table.load(p, v);
      candidates.clear();
      for (BlockId j = 0; j < k; ++j) {
        if (j == i) continue;
        const Gain gain = table.gain(i, j);
        if (accepts_move(p, v, j, gain)) candidates.push_back({j, gain, rng()});
      }
      std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        return a.gain != b.gain ? a.gain > b.gain : a.tiebreak < b.tiebreak;
      });
      // Cycle-creating targets are dropped for this visit; they are retried next pass.
      for (const auto& cand : candidates) {
        const Weight cut_before = p.cut();
        const SearchKey key_before = opts.check_invariants ? search_key(p) : SearchKey{};
        const auto record = p.move_node(v, cand.target);
        if (record.created_quotient_edge) {
          ++local.acyclicity_checks;
          if (!p.quotient().check_acyclic().acyclic) {
            p.undo(record);
            ++local.rejected;
            continue;
          }
        }
        if (record.created_quotient_edge) p.normalize_block_order();
        ++local.moves;
        moved = true;
        if (opts.check_invariants) {
          detail::check_after_move(p, cut_before, cand.gain, true);
          check_key_decreased(key_before, p);
        }
        break;
      }
    }
  }
  if (stats) *stats = local;
  return p;
}

}  // namespace dagpart
