#pragma once

// Walks strategy files independently of the verifier: boards along each
// leaf's line of play, and a brute-force pass/fail check.

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "ramsey/graph.hpp"
#include "ramsey/strategy.hpp"

namespace lines {

using ramsey::Color;
using ramsey::ColoredGraph;
using ramsey::StrategyCase;
using ramsey::StrategyFile;
using ramsey::StrategyNode;
using ramsey::color_from_char;
using ramsey::index;
using ramsey::kColors;

struct Line {
  std::vector<ColoredGraph> boards;  // boards[r] is the board after r rounds
  std::string colors;                // Painter's colors after the opening
};

struct Binder {
  ColoredGraph board;
  std::map<std::string, int> id;

  int resolve(const std::string& name, int& next) {
    auto it = id.find(name);
    if (it != id.end()) return it->second;
    id[name] = next;
    return next++;
  }

  void play(const std::string& u, const std::string& v, Color c) {
    int next = board.vertex_count();
    int a = resolve(u, next);
    int b = resolve(v, next);
    int n = board.vertex_count();
    ramsey::Move m{a < n ? a : ramsey::kFresh, b < n ? b : ramsey::kFresh};
    if (a >= n && b >= n && a > b) std::swap(m.u, m.v);
    board = board.with_edge(m, c);
  }
};

// The opening pattern that selects `label` without relabeling.
inline std::string own_pattern(const ramsey::StrategyFile& f, const std::string& label) {
  for (const auto& p : f.patterns) {
    if (p.case_label == label && p.relabel.empty()) return p.colors;
  }
  throw std::runtime_error("no identity pattern for case " + label);
}

inline void walk(const ramsey::StrategyNode& node, Binder b, std::vector<ColoredGraph> boards, std::string colors,
                 std::vector<Line>& out) {
  if (!node.on(Color::Blue) && !node.on(Color::Red)) {
    out.push_back({boards, colors});
    return;
  }
  for (Color c : {Color::Blue, Color::Red}) {
    const auto* next = node.on(c);
    if (!next) continue;
    Binder nb = b;
    nb.play(node.u, node.v, c);
    auto nboards = boards;
    nboards.push_back(nb.board);
    walk(*next, nb, nboards, colors + ramsey::to_char(c), out);
  }
}

// Leaf lines of a case in subcase-letter order.
inline std::vector<Line> case_lines(const ramsey::StrategyFile& f, const std::string& label) {
  const std::string pattern = own_pattern(f, label);
  Binder b;
  std::vector<ColoredGraph> boards{b.board};
  for (std::size_t i = 0; i < f.opening.size(); ++i) {
    b.play(f.opening[i].first, f.opening[i].second, *ramsey::color_from_char(pattern[i]));
    boards.push_back(b.board);
  }
  std::vector<Line> out;
  walk(f.find_case(label)->root, b, boards, "", out);
  return out;
}

// Test-only checker: plays every opening pattern and every Painter reply with
// brute-force target detection. Claims must hold, uncovered colors must not
// arise, and every line must end in a completed target within the budget.
class ReferenceChecker {
 public:
  explicit ReferenceChecker(const StrategyFile& f) : f_(f) {}

  bool pass() {
    std::vector<std::string> names;
    for (const auto& [u, v] : f_.opening) {
      for (const auto& x : {u, v}) {
        if (std::find(names.begin(), names.end(), x) == names.end()) names.push_back(x);
      }
    }
    for (const auto& p : f_.patterns) {
      Binder b;
      bool over = false;
      for (std::size_t i = 0; i < f_.opening.size() && !over; ++i) {
        if (!legal(b, f_.opening[i].first, f_.opening[i].second)) return false;
        b.play(f_.opening[i].first, f_.opening[i].second, *color_from_char(p.colors[i]));
        over = done(b.board);
      }
      if (over) continue;
      if (p.immediate) return false;
      const StrategyCase* sc = f_.find_case(p.case_label);
      if (!sc) return false;
      if (!p.relabel.empty()) {
        std::map<std::string, int> id;
        if (p.relabel.size() != names.size()) return false;
        for (std::size_t i = 0; i < names.size(); ++i) {
          auto it = b.id.find(p.relabel[i]);
          if (it == b.id.end()) return false;
          id[names[i]] = it->second;
        }
        b.id = id;
      }
      if (!node_ok(sc->root, b, static_cast<int>(f_.opening.size()))) return false;
    }
    return true;
  }

 private:
  bool done(const ColoredGraph& g) const {
    return oracle::contains_pruned(g, f_.red, Color::Red) || oracle::contains_pruned(g, f_.blue, Color::Blue);
  }

  static bool legal(const Binder& b, const std::string& u, const std::string& v) {
    auto iu = b.id.find(u);
    auto iv = b.id.find(v);
    if (iu != b.id.end() && iv != b.id.end()) return iu->second != iv->second && !b.board.has_edge(iu->second, iv->second);
    return u != v;
  }

  bool node_ok(const StrategyNode& node, const Binder& b, int played) const {
    if (played + 1 > f_.budget || !legal(b, node.u, node.v)) return false;
    for (Color c : kColors) {
      Binder nb = b;
      nb.play(node.u, node.v, c);
      const bool complete = oracle::contains_pruned(nb.board, c == Color::Red ? f_.red : f_.blue, c);
      if (node.win || node.lose_if[index(c)]) {
        if (!complete) return false;
        continue;
      }
      if (complete) continue;
      const StrategyNode* kid = node.on(c);
      if (!kid || !node_ok(*kid, nb, played + 1)) return false;
    }
    return true;
  }

  const StrategyFile& f_;
};

}  // namespace lines
