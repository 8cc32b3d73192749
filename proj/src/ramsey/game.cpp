#include "ramsey/game.hpp"

#include <algorithm>

#include "ramsey/canonical.hpp"
#include "ramsey/embed.hpp"

namespace ramsey {

namespace {

std::optional<Color> completed_color(const ColoredGraph& board, const Target& red, const Target& blue) {
  if (contains_mono(board, red, Color::Red)) return Color::Red;
  if (contains_mono(board, blue, Color::Blue)) return Color::Blue;
  return std::nullopt;
}

bool completes(const GameState& s, const Move& m, Color c) {
  if (!s.board().playable(m)) throw Error(ErrorCode::InvalidArgument, "move is not playable on this board");
  return contains_mono(s.board().with_edge(m, c), s.target(c), c);
}

}  // namespace

GameState::GameState(Target red, Target blue, ColoredGraph board)
    : red_(std::move(red)), blue_(std::move(blue)), board_(std::move(board)) {
  completed_ = completed_color(board_, red_, blue_);
}

GameState GameState::play(const Move& m, Color c) const {
  if (terminal()) throw Error(ErrorCode::StateAlreadyWon, "Builder has already won this game");
  GameState next = *this;
  next.board_ = board_.with_edge(m, c);
  // Only the new edge can complete a target, and only in its own color.
  if (contains_mono(next.board_, target(c), c)) next.completed_ = c;
  return next;
}

std::vector<MoveOrbit> legal_move_orbits(const GameState& s) {
  if (s.terminal()) throw Error(ErrorCode::StateAlreadyWon, "no moves in a finished game");
  struct Keyed {
    MoveOrbit orbit;
    CanonicalKey red;
    CanonicalKey blue;
  };
  std::vector<Keyed> keyed;
  for (const PairOrbit& o : automorphism_orbits(s.board())) {
    keyed.push_back({{o.representative, static_cast<int>(o.members.size())},
                     canonical_key(s.board().with_edge(o.representative, Color::Red)),
                     canonical_key(s.board().with_edge(o.representative, Color::Blue))});
  }
  std::stable_sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
    return a.red != b.red ? a.red < b.red : a.blue < b.blue;
  });
  std::vector<MoveOrbit> out;
  out.reserve(keyed.size());
  for (auto& k : keyed) out.push_back(k.orbit);
  return out;
}

bool forces_red(const GameState& s, const Move& m) { return completes(s, m, Color::Blue); }

bool forces_blue(const GameState& s, const Move& m) { return completes(s, m, Color::Red); }

bool double_forced(const GameState& s, const Move& m) { return forces_red(s, m) && forces_blue(s, m); }

}  // namespace ramsey
