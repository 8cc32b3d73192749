#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ramsey/game.hpp"

namespace ramsey {

// One played round. Vertex ids at or above the board's vertex count at that
// round denote fresh vertices, numbered in order.
struct TranscriptMove {
  int round = 0;
  int u = 0;
  int v = 0;
  Color color = Color::Red;
};

// Text form: `# key value` header comments, then `<round> <u> <v> <R|B>` lines.
struct Transcript {
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<TranscriptMove> moves;

  std::optional<std::string> get(const std::string& key) const;
  void set(const std::string& key, std::string value);
};

Transcript parse_transcript(std::string_view text);
std::string to_text(const Transcript& t);
std::string format_move_line(const TranscriptMove& m);

// Maps transcript ids onto a move for `board`: existing ids stay, the next
// unused ids become fresh endpoints. Throws Error(InvalidVertex) otherwise.
Move move_from_ids(const ColoredGraph& board, int u, int v);

// Plays the transcript from the empty board. Throws Error naming the round
// on an out-of-order round number, an illegal move, or play after a win.
GameState replay(const Transcript& t, const Target& red, const Target& blue);

// Targets named by a `targets RED=<spec> BLUE=<spec>` header, if present.
std::optional<std::pair<Target, Target>> transcript_targets(const Transcript& t);

}  // namespace ramsey
