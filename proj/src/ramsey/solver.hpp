#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "ramsey/canonical.hpp"
#include "ramsey/embed.hpp"
#include "ramsey/game.hpp"
#include "ramsey/strategy.hpp"
#include "ramsey/table.hpp"

namespace ramsey {

struct SolveOptions {
  bool use_transposition = true;
  // When false Builder never joins two new vertices on a nonempty board. The
  // restricted game only certifies upper bounds.
  bool allow_fresh_fresh = true;
  bool deficit_pruning = true;
  int threads = 1;
  // Nodes allowed per top-level call (0 = unlimited); exceeding it raises
  // Error(Aborted). The memo table stays valid after an abort.
  std::uint64_t node_limit = 0;
  std::size_t table_limit = std::size_t{8} << 20;
};

struct SolveStats {
  std::uint64_t nodes = 0;
  std::uint64_t table_hits = 0;
  std::uint64_t table_entries = 0;
  double seconds = 0.0;
};

struct SolveOutcome {
  enum class Kind { WinIn, SurvivesCap };

  Kind kind = Kind::SurvivesCap;
  int rounds = 0;  // n for WinIn, the cap for SurvivesCap
  // WinIn: survival at rounds - 1 was established in the full game.
  // SurvivesCap: the full move set was searched, so this is a lower bound.
  bool exact = false;
  // Optimal line: Builder's best move, Painter's most stubborn color.
  std::vector<Edge> principal_variation;
  SolveStats stats;

  bool builder_wins() const noexcept { return kind == Kind::WinIn; }
};

// Exact AND-OR search over canonical boards for one pair of targets. The
// memo table persists across calls on the same solver.
class Solver {
 public:
  Solver(Target red, Target blue, SolveOptions options = {});
  ~Solver();
  Solver(const Solver&) = delete;
  Solver& operator=(const Solver&) = delete;

  const Target& red() const noexcept { return red_; }
  const Target& blue() const noexcept { return blue_; }
  const SolveOptions& options() const noexcept { return options_; }

  // True when Builder, to move on `board`, can force a red target or a blue
  // target within `rounds` more rounds. A board already holding one counts
  // as won in zero rounds.
  bool builder_wins(const ColoredGraph& board, int rounds);

  // Fewest rounds Builder needs from `board`, or SurvivesCap(cap).
  SolveOutcome value(const ColoredGraph& board, int cap, bool with_pv = false);

  // A Builder move from `board` that wins within `rounds`; nullopt if none.
  std::optional<Move> winning_move(const ColoredGraph& board, int rounds);

  // Color for Painter after Builder proposes `m` with `rounds` rounds left
  // (counting this one) that neither completes a target nor lets Builder
  // finish within the rest; nullopt when both colors lose.
  std::optional<Color> surviving_color(const ColoredGraph& board, const Move& m, int rounds);

  // Painter's choice maximizing the rounds Builder still needs, limited to a
  // lookahead of `rounds` (counting this one).
  Color stubborn_color(const ColoredGraph& board, const Move& m, int rounds);

  SolveStats stats() const;

 private:
  struct Node;
  class Cancelled;
  class Budget;

  int red_need(const ColoredGraph& g) const;
  int blue_need(const ColoredGraph& g) const;
  bool search(const ColoredGraph& g, int t, int need_r, int need_b);
  bool root_search(const ColoredGraph& g, int t, int need_r, int need_b);
  std::vector<Node> expand(const ColoredGraph& g, int t, int need_r, int need_b, const PairSet& red_threats,
                           const PairSet& blue_threats, const CanonicalForm& form);
  void count_node();

  Target red_;
  Target blue_;
  SolveOptions options_;
  TranspositionTable table_;
  std::atomic<std::uint64_t> nodes_{0};
  std::atomic<std::uint64_t> hits_{0};
  std::atomic<bool> stop_{false};
  std::uint64_t ceiling_ = UINT64_MAX;
  int depth_ = 0;
};

// Online size Ramsey number search from the empty board.
SolveOutcome online_size_ramsey(const Target& red, const Target& blue, int cap, const SolveOptions& options = {},
                                bool with_pv = false);

// Refutes any Builder line within a fixed number of rounds, backed by the
// solver's memo table.
class PainterOracle {
 public:
  PainterOracle(std::shared_ptr<Solver> solver, int rounds) : solver_(std::move(solver)), rounds_(rounds) {}

  int rounds() const noexcept { return rounds_; }
  // Reply to Builder's move `m` on `board`, which has `played` rounds behind it.
  Color reply(const ColoredGraph& board, const Move& m, int played) const;

 private:
  std::shared_ptr<Solver> solver_;
  int rounds_;
};

struct SurvivalResult {
  bool survives = false;
  std::optional<PainterOracle> witness;
  SolveStats stats;
};

// Whether Painter can avoid both targets for `rounds` rounds from the empty
// board; on success carries a Painter oracle. Uses the full move set.
SurvivalResult painter_survival(const Target& red, const Target& blue, int rounds, SolveOptions options = {});

// Decision tree for Builder winning within `rounds` from the empty board.
// Throws Error(NoStrategy) when no such tree exists.
StrategyFile extract_builder_strategy(const Target& red, const Target& blue, int rounds,
                                      const SolveOptions& options = {});
StrategyFile extract_builder_strategy(Solver& solver, int rounds);

}  // namespace ramsey
