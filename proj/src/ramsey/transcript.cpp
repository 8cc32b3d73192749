#include "ramsey/transcript.hpp"

#include <sstream>

#include "ramsey/text.hpp"

namespace ramsey {

std::optional<std::string> Transcript::get(const std::string& key) const {
  for (const auto& [k, v] : meta) {
    if (k == key) return v;
  }
  return std::nullopt;
}

void Transcript::set(const std::string& key, std::string value) {
  for (auto& [k, v] : meta) {
    if (k == key) {
      v = std::move(value);
      return;
    }
  }
  meta.emplace_back(key, std::move(value));
}

Transcript parse_transcript(std::string_view text) {
  Transcript t;
  std::size_t pos = 0;
  int number = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    ++number;
    auto hash = raw.find('#');
    if (hash != std::string_view::npos) {
      auto words = split_words(raw.substr(hash + 1));
      if (hash == raw.find_first_not_of(" \t") && !words.empty()) {
        std::string value;
        for (std::size_t i = 1; i < words.size(); ++i) value += (i > 1 ? " " : "") + words[i];
        t.meta.emplace_back(words[0], value);
      }
      raw = raw.substr(0, hash);
    }
    auto words = split_words(raw);
    if (words.empty()) continue;
    auto where = "line " + std::to_string(number) + ": ";
    if (words.size() != 4) throw Error(ErrorCode::Parse, where + "expected `<round> <u> <v> <R|B>`");
    TranscriptMove m;
    try {
      std::size_t used = 0;
      m.round = std::stoi(words[0], &used);
      if (used != words[0].size()) throw std::invalid_argument("round");
      m.u = std::stoi(words[1], &used);
      if (used != words[1].size()) throw std::invalid_argument("u");
      m.v = std::stoi(words[2], &used);
      if (used != words[2].size()) throw std::invalid_argument("v");
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::Parse, where + "round and vertices must be integers");
    }
    auto c = words[3].size() == 1 ? color_from_char(words[3][0]) : std::nullopt;
    if (!c) throw Error(ErrorCode::Parse, where + "color must be R or B");
    m.color = *c;
    t.moves.push_back(m);
  }
  return t;
}

std::string format_move_line(const TranscriptMove& m) {
  return std::to_string(m.round) + ' ' + std::to_string(m.u) + ' ' + std::to_string(m.v) + ' ' + to_char(m.color);
}

std::string to_text(const Transcript& t) {
  std::ostringstream os;
  for (const auto& [k, v] : t.meta) os << "# " << k << (v.empty() ? "" : " ") << v << '\n';
  for (const auto& m : t.moves) os << format_move_line(m) << '\n';
  return os.str();
}

Move move_from_ids(const ColoredGraph& board, int u, int v) {
  const int n = board.vertex_count();
  if (u > v) std::swap(u, v);
  if (u < 0) throw Error(ErrorCode::InvalidVertex, "vertex ids must be non-negative");
  if (u == v) throw Error(ErrorCode::SelfLoop, "edge joins vertex " + std::to_string(u) + " to itself");
  if (v < n) return Move{u, v};
  if (u < n) {
    if (v != n) throw Error(ErrorCode::InvalidVertex, "new vertex must be numbered " + std::to_string(n));
    return Move{u, kFresh};
  }
  if (u != n || v != n + 1) {
    throw Error(ErrorCode::InvalidVertex,
                "new vertices must be numbered " + std::to_string(n) + " and " + std::to_string(n + 1));
  }
  return Move{kFresh, kFresh};
}

GameState replay(const Transcript& t, const Target& red, const Target& blue) {
  GameState s(red, blue);
  for (const auto& m : t.moves) {
    auto where = "round " + std::to_string(m.round) + ": ";
    if (m.round != s.rounds_played() + 1) {
      throw Error(ErrorCode::Parse, where + "expected round " + std::to_string(s.rounds_played() + 1));
    }
    if (s.terminal()) throw Error(ErrorCode::StateAlreadyWon, where + "the game was already won");
    try {
      s = s.play(move_from_ids(s.board(), m.u, m.v), m.color);
    } catch (const Error& e) {
      throw Error(e.code(), where + e.what());
    }
  }
  return s;
}

std::optional<std::pair<Target, Target>> transcript_targets(const Transcript& t) {
  auto line = t.get("targets");
  if (!line) return std::nullopt;
  auto words = split_words(*line);
  if (words.size() != 2 || !words[0].starts_with("RED=") || !words[1].starts_with("BLUE=")) {
    throw Error(ErrorCode::Parse, "bad targets header `" + *line + "`");
  }
  return std::pair{Target::parse(words[0].substr(4)), Target::parse(words[1].substr(5))};
}

}  // namespace ramsey
