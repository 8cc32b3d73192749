#pragma once

#include <optional>
#include <vector>

#include "ramsey/graph.hpp"
#include "ramsey/target.hpp"

namespace ramsey {

// Board plus the pair of targets: red G and blue H. Builder has won once the
// board holds a red G or a blue H.
class GameState {
 public:
  GameState(Target red, Target blue, ColoredGraph board = {});

  const ColoredGraph& board() const noexcept { return board_; }
  const Target& red_target() const noexcept { return red_; }
  const Target& blue_target() const noexcept { return blue_; }
  const Target& target(Color c) const noexcept { return c == Color::Red ? red_ : blue_; }
  int rounds_played() const noexcept { return board_.edge_count(); }

  bool terminal() const noexcept { return completed_.has_value(); }
  // Color of a completed target; red is reported when both are present.
  std::optional<Color> completed() const noexcept { return completed_; }

  // Throws Error(StateAlreadyWon) on a terminal state; add_edge errors propagate.
  GameState play(const Move& m, Color c) const;

 private:
  Target red_;
  Target blue_;
  ColoredGraph board_;
  std::optional<Color> completed_;
};

struct MoveOrbit {
  Move representative;
  int size = 0;
};

// One representative per automorphism orbit of playable pairs, ordered by the
// canonical key of the red child, then of the blue child.
std::vector<MoveOrbit> legal_move_orbits(const GameState& s);

// Coloring m blue would complete the blue target, so Painter must use red.
bool forces_red(const GameState& s, const Move& m);
// Coloring m red would complete the red target, so Painter must use blue.
bool forces_blue(const GameState& s, const Move& m);
bool double_forced(const GameState& s, const Move& m);

}  // namespace ramsey
