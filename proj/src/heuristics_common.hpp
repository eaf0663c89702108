#pragma once

// Helpers shared by the local search implementations. Not installed.

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "dagpart/errors.hpp"
#include "dagpart/heuristics.hpp"

namespace dagpart::detail {

/// Acceptance rule shared by SM, AM and GM: the target must have room, and the
/// move must either reduce the cut or keep it while strictly lowering the sum
/// of squared block weights.
inline bool accepts_move(const Partition& p, NodeId v, BlockId target, Gain gain) {
  if (gain < 0 || !p.move_keeps_balance(v, target)) return false;
  if (gain > 0) return true;
  const Weight c = p.graph().node_weight(v);
  return c > 0 && p.block_weight(target) + c < p.block_weight(p.block(v));
}

/// Picks among equal-gain candidates uniformly by reservoir sampling.
class BestCandidate {
 public:
  void offer(BlockId target, Gain gain, Rng& rng) {
    if (count_ == 0 || gain > gain_) {
      target_ = target;
      gain_ = gain;
      count_ = 1;
    } else if (gain == gain_) {
      ++count_;
      if (uniform_int<std::uint64_t>(rng, 0, count_ - 1) == 0) target_ = target;
    }
  }
  bool empty() const noexcept { return count_ == 0; }
  BlockId target() const noexcept { return target_; }
  Gain gain() const noexcept { return gain_; }

 private:
  BlockId target_ = 0;
  Gain gain_ = 0;
  std::uint64_t count_ = 0;
};

/// Window [A, B]: A is the highest predecessor block (0 if none), B the
/// lowest successor block (k-1 if none).
inline std::pair<BlockId, BlockId> am_window(const Partition& p, NodeId v) {
  BlockId lo = 0;
  BlockId hi = p.k() - 1;
  for (const auto& e : p.graph().in_edges(v)) lo = std::max(lo, p.block(e.target));
  for (const auto& e : p.graph().out_edges(v)) hi = std::min(hi, p.block(e.target));
  return {lo, hi};
}

/// All neighbors share v's block, so every move has negative gain. Isolated
/// nodes are not interior: a zero-gain move may still improve balance.
inline bool interior(const Partition& p, NodeId v) {
  return p.external_degree(v) == 0 && p.graph().in_degree(v) + p.graph().out_degree(v) > 0;
}

/// Random visiting order that stays cache friendly on large graphs: chunks of
/// consecutive ids in shuffled order, nodes shuffled inside each chunk.
inline void shuffle_visit_order(std::vector<NodeId>& order, Rng& rng) {
  constexpr NodeId kChunk = 64;
  const auto n = static_cast<NodeId>(order.size());
  const NodeId chunks = (n + kChunk - 1) / kChunk;
  std::vector<NodeId> chunk_order(chunks);
  for (NodeId c = 0; c < chunks; ++c) chunk_order[c] = c;
  std::shuffle(chunk_order.begin(), chunk_order.end(), rng);
  std::size_t pos = 0;
  for (NodeId c : chunk_order) {
    const std::size_t begin = pos;
    for (NodeId v = c * kChunk; v < std::min(n, (c + 1) * kChunk); ++v) order[pos++] = v;
    std::shuffle(order.begin() + static_cast<std::ptrdiff_t>(begin), order.begin() + static_cast<std::ptrdiff_t>(pos),
                 rng);
  }
}

[[noreturn]] inline void invariant_failed(const std::string& what) { throw InvariantViolation(what); }

/// Full consistency check of a partition after a committed move.
void check_after_move(const Partition& p, Weight cut_before, Gain expected_gain, bool require_forward_numbering);

}  // namespace dagpart::detail
