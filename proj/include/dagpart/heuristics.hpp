#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "dagpart/partition.hpp"
#include "dagpart/random.hpp"

namespace dagpart {

enum class Heuristic { simple_moves, advanced_moves, global_moves, fm_moves };

inline constexpr Heuristic kAllHeuristics[] = {Heuristic::simple_moves, Heuristic::advanced_moves,
                                               Heuristic::global_moves, Heuristic::fm_moves};

/// CLI ids: sm, am, gm, fm.
std::string_view heuristic_id(Heuristic h) noexcept;
std::optional<Heuristic> parse_heuristic(std::string_view id) noexcept;

struct SearchOptions {
  /// Re-verify invariants after every committed move (gain exactness,
  /// acyclicity, block numbering, decreasing (cut, sum of squared block
  /// weights)). Throws InvariantViolation on failure. Costly; for tests.
  bool check_invariants = false;
};

struct SearchStats {
  std::uint64_t rounds = 0;      ///< full passes over the nodes (FM: outer rounds)
  std::uint64_t moves = 0;       ///< committed moves (FM: moves that survived rollback)
  std::uint64_t rejected = 0;    ///< GM: moves undone because they closed a cycle; FM: rolled back
  std::uint64_t acyclicity_checks = 0;  ///< GM: Kahn runs on the quotient graph
  std::uint64_t inner_passes = 0;       ///< FM: pair passes
};

// All heuristics take a feasible partition and return a feasible partition
// with equal or lower cut whose blocks are topologically numbered.

/// Moves between adjacent blocks i-1 / i+1 only, guarded by C_in / C_out = 0.
Partition simple_moves(Partition p, Rng& rng, const SearchOptions& opts = {}, SearchStats* stats = nullptr);

/// Moves to any block in the window [A, B] spanned by the node's neighbors.
Partition advanced_moves(Partition p, Rng& rng, const SearchOptions& opts = {}, SearchStats* stats = nullptr);

/// Moves to any block; moves that create a quotient cycle are undone.
Partition global_moves(Partition p, Rng& rng, const SearchOptions& opts = {}, SearchStats* stats = nullptr);

/// Pairwise Fiduccia-Mattheyses style passes with best-seen rollback.
Partition fm_moves(Partition p, Rng& rng, const SearchOptions& opts = {}, SearchStats* stats = nullptr);

Partition improve(Heuristic h, Partition p, Rng& rng, const SearchOptions& opts = {},
                  SearchStats* stats = nullptr);

/// Blocks v may move to under the legality rule of SM, AM or GM, before gain
/// and balance are looked at. For GM this is every other block; its cycle
/// check happens after the tentative move. AM requires topologically
/// numbered blocks. Throws ConfigError for FM, whose targets depend on the
/// current block pair.
std::vector<BlockId> legal_targets(Heuristic h, const Partition& p, NodeId v);

/// (cut, sum of squared block weights); strictly decreases with every
/// accepted SM / AM / GM move.
struct SearchKey {
  Weight cut;
  unsigned __int128 squares;
  friend auto operator<=>(const SearchKey&, const SearchKey&) = default;
};
SearchKey search_key(const Partition& p);

}  // namespace dagpart
