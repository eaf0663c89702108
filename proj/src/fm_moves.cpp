#include <algorithm>
#include <queue>
#include <utility>
#include <vector>

#include "heuristics_common.hpp"

namespace dagpart {
namespace {

/// Heap entry. Larger gain first; equal gains ordered by a random key drawn at insertion.
struct MoveCandidate {
  NodeId node;
  BlockId target;
  Gain gain;
  std::uint64_t tiebreak;
  std::uint32_t version;

  friend bool operator<(const MoveCandidate& a, const MoveCandidate& b) {
    return a.gain != b.gain ? a.gain < b.gain : a.tiebreak < b.tiebreak;
  }
};

class FmRefiner {
 public:
  FmRefiner(Partition& p, Rng& rng, const SearchOptions& opts, SearchStats& stats)
      : p_(p), g_(p.graph()), rng_(rng), opts_(opts), stats_(stats), table_(p.k()),
        enabled_(g_.node_count(), 0), locked_(g_.node_count(), 0), version_(g_.node_count(), 0) {
    const NodeId n = g_.node_count();
    pop_cap_ = std::max<std::size_t>(1, 2 * std::size_t{n} / p.k());
    members_.resize(p.k());
    slot_.resize(n);
    for (NodeId v = 0; v < n; ++v) {
      slot_[v] = members_[p.block(v)].size();
      members_[p.block(v)].push_back(v);
    }
  }

  void run() {
    const BlockId k = p_.k();
    std::vector<bool> active(k, true);
    std::vector<std::pair<BlockId, BlockId>> pairs;
    while (true) {
      pairs.clear();
      for (BlockId a = 0; a < k; ++a) {
        for (BlockId b = a + 1; b < k; ++b) {
          if (active[a] || active[b]) pairs.emplace_back(a, b);
        }
      }
      if (pairs.empty()) break;
      ++stats_.rounds;
      std::shuffle(pairs.begin(), pairs.end(), rng_);
      std::vector<bool> next_active(k, false);
      for (const auto& [a, b] : pairs) {
        if (inner_pass(a, b)) next_active[a] = next_active[b] = true;
      }
      active = std::move(next_active);
    }
  }

 private:
  bool is_boundary(NodeId v) const {
    const BlockId b = p_.block(v);
    for (const auto& e : g_.out_edges(v)) {
      if (p_.block(e.target) != b) return true;
    }
    for (const auto& e : g_.in_edges(v)) {
      if (p_.block(e.target) != b) return true;
    }
    return false;
  }

  /// v in A: no successor in a block before B. v in B: no predecessor in a block after A.
  bool satisfies_enable_rule(NodeId v) const {
    if (p_.block(v) == a_) {
      for (const auto& e : g_.out_edges(v)) {
        if (p_.block(e.target) < b_) return false;
      }
    } else {
      for (const auto& e : g_.in_edges(v)) {
        if (p_.block(e.target) > a_) return false;
      }
    }
    return true;
  }

  void relocate(NodeId v, BlockId from, BlockId to) {
    auto& src = members_[from];
    const NodeId last = src.back();
    src[slot_[v]] = last;
    slot_[last] = slot_[v];
    src.pop_back();
    slot_[v] = members_[to].size();
    members_[to].push_back(v);
  }

  bool is_enabled(NodeId v) const { return enabled_[v] == pass_; }
  bool is_locked(NodeId v) const { return locked_[v] == pass_; }
  void disable(NodeId v) { enabled_[v] = 0; }

  void enable(NodeId v) {
    enabled_[v] = pass_;
    ++version_[v];
    const BlockId from = p_.block(v);
    const BlockId to = from == a_ ? b_ : a_;
    table_.load(p_, v);
    heap_.push({v, to, table_.gain(from, to), rng_(), version_[v]});
  }

  /// One FM pass between blocks a < b. Returns true if moves survive the rollback.
  bool inner_pass(BlockId a, BlockId b) {
    a_ = a;
    b_ = b;
    ++pass_;
    ++stats_.inner_passes;
    heap_ = {};
    for (BlockId side : {a, b}) {
      for (NodeId v : members_[side]) {
        if (is_boundary(v) && satisfies_enable_rule(v)) enable(v);
      }
    }

    log_.clear();
    Weight best_cut = p_.cut();
    std::size_t best_len = 0;
    std::size_t pops = 0;
    while (!heap_.empty() && pops < pop_cap_) {
      const MoveCandidate cand = heap_.top();
      heap_.pop();
      ++pops;
      const NodeId v = cand.node;
      if (is_locked(v) || !is_enabled(v) || cand.version != version_[v]) continue;
      if (!p_.move_keeps_balance(v, cand.target)) continue;

      const Weight cut_before = p_.cut();
      const BlockId from = p_.block(v);
      log_.push_back(p_.move_node(v, cand.target));
      relocate(v, from, cand.target);
      locked_[v] = pass_;
      if (opts_.check_invariants) detail::check_after_move(p_, cut_before, cand.gain, true);
      if (p_.cut() < best_cut) {
        best_cut = p_.cut();
        best_len = log_.size();
      }

      if (from == a) {
        for (const auto& e : g_.out_edges(v)) {
          if (p_.block(e.target) == b) disable(e.target);
        }
        for (const auto& e : g_.in_edges(v)) {
          const NodeId u = e.target;
          if (p_.block(u) == a && !is_locked(u) && !is_enabled(u) && satisfies_enable_rule(u)) enable(u);
        }
      } else {
        for (const auto& e : g_.in_edges(v)) {
          if (p_.block(e.target) == a) disable(e.target);
        }
        for (const auto& e : g_.out_edges(v)) {
          const NodeId u = e.target;
          if (p_.block(u) == b && !is_locked(u) && !is_enabled(u) && satisfies_enable_rule(u)) enable(u);
        }
      }
    }

    stats_.rejected += log_.size() - best_len;
    while (log_.size() > best_len) {
      const MoveRecord& r = log_.back();
      p_.undo(r);
      relocate(r.node, r.to, r.from);
      log_.pop_back();
    }
    stats_.moves += best_len;
    return best_len > 0;
  }

  Partition& p_;
  const WeightedDigraph& g_;
  Rng& rng_;
  const SearchOptions& opts_;
  SearchStats& stats_;
  GainTable table_;

  std::vector<std::uint32_t> enabled_;  ///< == pass_ when enabled in the current pass
  std::vector<std::uint32_t> locked_;   ///< == pass_ when locked in the current pass
  std::vector<std::uint32_t> version_;  ///< bumped on every enable; invalidates older heap entries
  std::vector<std::vector<NodeId>> members_;  ///< nodes of each block, kept in sync with p_
  std::vector<std::size_t> slot_;             ///< index of each node in members_[block]
  std::priority_queue<MoveCandidate> heap_;
  std::vector<MoveRecord> log_;
  std::size_t pop_cap_ = 1;
  std::uint32_t pass_ = 0;
  BlockId a_ = 0;
  BlockId b_ = 0;
};

}  // namespace

Partition fm_moves(Partition p, Rng& rng, const SearchOptions& opts, SearchStats* stats) {
  p.normalize_block_order();
  SearchStats local;
  if (p.k() >= 2 && p.graph().node_count() > 0) {
    FmRefiner refiner(p, rng, opts, local);
    refiner.run();
  }
  if (opts.check_invariants && !p.quotient().is_forward_numbered()) {
    detail::invariant_failed("FM output is not topologically numbered");
  }
  if (stats) *stats = local;
  return p;
}

}  // namespace dagpart
