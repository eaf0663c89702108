#include "heuristics_common.hpp"

#include <array>

namespace dagpart {

std::string_view heuristic_id(Heuristic h) noexcept {
  switch (h) {
    case Heuristic::simple_moves: return "sm";
    case Heuristic::advanced_moves: return "am";
    case Heuristic::global_moves: return "gm";
    case Heuristic::fm_moves: return "fm";
  }
  return "?";
}

std::optional<Heuristic> parse_heuristic(std::string_view id) noexcept {
  for (auto h : kAllHeuristics) {
    if (heuristic_id(h) == id) return h;
  }
  return std::nullopt;
}

Partition improve(Heuristic h, Partition p, Rng& rng, const SearchOptions& opts, SearchStats* stats) {
  switch (h) {
    case Heuristic::simple_moves: return simple_moves(std::move(p), rng, opts, stats);
    case Heuristic::advanced_moves: return advanced_moves(std::move(p), rng, opts, stats);
    case Heuristic::global_moves: return global_moves(std::move(p), rng, opts, stats);
    case Heuristic::fm_moves: return fm_moves(std::move(p), rng, opts, stats);
  }
  return p;
}

std::vector<BlockId> legal_targets(Heuristic h, const Partition& p, NodeId v) {
  const BlockId i = p.block(v);
  const BlockId k = p.k();
  std::vector<BlockId> out;
  switch (h) {
    case Heuristic::simple_moves: {
      GainTable table(k);
      table.load(p, v);
      if (i > 0 && table.c_in(i) == 0) out.push_back(i - 1);
      if (i + 1 < k && table.c_out(i) == 0) out.push_back(i + 1);
      break;
    }
    case Heuristic::advanced_moves: {
      const auto [lo, hi] = detail::am_window(p, v);
      for (BlockId j = lo; j <= hi && lo <= hi; ++j) {
        if (j != i) out.push_back(j);
      }
      break;
    }
    case Heuristic::global_moves:
      for (BlockId j = 0; j < k; ++j) {
        if (j != i) out.push_back(j);
      }
      break;
    case Heuristic::fm_moves:
      throw ConfigError("FM targets depend on the block pair");
  }
  return out;
}

SearchKey search_key(const Partition& p) {
  unsigned __int128 squares = 0;
  for (auto w : p.block_weights()) squares += static_cast<unsigned __int128>(w) * w;
  return {p.cut(), squares};
}

namespace detail {

void check_after_move(const Partition& p, Weight cut_before, Gain expected_gain, bool require_forward_numbering) {
  const Gain actual = static_cast<Gain>(cut_before) - static_cast<Gain>(p.cut());
  if (actual != expected_gain) {
    invariant_failed("recorded gain " + std::to_string(expected_gain) + " but cut changed by " +
                     std::to_string(actual));
  }
  const Partition fresh(p.graph(), p.assignment(), p.spec());
  if (!(fresh == p)) invariant_failed("incremental partition state diverged from recomputation");
  if (!p.is_balanced()) invariant_failed("committed move violates the balance constraint");
  if (!p.quotient().check_acyclic().acyclic) invariant_failed("committed move created a quotient cycle");
  if (require_forward_numbering && !p.quotient().is_forward_numbered()) {
    invariant_failed("committed move broke the topological block numbering");
  }
}

}  // namespace detail
}  // namespace dagpart
