#include "ramsey/book.hpp"

#include "ramsey/embed.hpp"

namespace ramsey {

namespace {

using Env = std::map<std::string, int>;

int lookup_name(const Env& env, const std::string& name) {
  auto it = env.find(name);
  return it == env.end() ? kFresh : it->second;
}

}  // namespace

StrategyBook::StrategyBook(const StrategyFile& file) : red_(file.red), blue_(file.blue), budget_(file.budget) {
  const auto opening_names = file.opening_vertices();
  auto done = [&](const ColoredGraph& g) {
    return contains_mono(g, red_, Color::Red) || contains_mono(g, blue_, Color::Blue);
  };
  auto walk = [&](auto&& self, const StrategyNode& node, const ColoredGraph& board, Env env) -> void {
    Move m{lookup_name(env, node.u), lookup_name(env, node.v)};
    if (!board.playable(m)) return;
    add(board, m);
    auto [iu, iv] = board.resolve(m);
    env[node.u] = iu;
    env[node.v] = iv;
    for (Color c : kColors) {
      const StrategyNode* kid = node.on(c);
      if (!kid) continue;
      ColoredGraph child = board.with_edge(m, c);
      if (!done(child)) self(self, *kid, child, env);
    }
  };
  for (const auto& p : file.patterns) {
    ColoredGraph board;
    Env env;
    bool finished = false;
    for (std::size_t i = 0; i < file.opening.size(); ++i) {
      const auto& [u, v] = file.opening[i];
      Move m{lookup_name(env, u), lookup_name(env, v)};
      if (!board.playable(m)) {
        finished = true;
        break;
      }
      add(board, m);
      auto [iu, iv] = board.resolve(m);
      env[u] = iu;
      env[v] = iv;
      board = board.with_edge(m, p.colors[i] == 'R' ? Color::Red : Color::Blue);
      if (done(board)) {
        finished = true;
        break;
      }
    }
    if (finished || p.immediate) continue;
    const StrategyCase* sc = file.find_case(p.case_label);
    if (!sc) continue;
    Env case_env = env;
    if (!p.relabel.empty()) {
      case_env.clear();
      for (std::size_t i = 0; i < opening_names.size(); ++i) case_env[opening_names[i]] = env.at(p.relabel[i]);
    }
    walk(walk, sc->root, board, case_env);
  }
}

const StrategyBook& StrategyBook::bundled_c4p6() {
  static const StrategyBook book(parse_strategy(bundled_c4p6_strategy()));
  return book;
}

bool StrategyBook::covers(const Target& red, const Target& blue) const {
  return same_graph(red, red_) && same_graph(blue, blue_);
}

void StrategyBook::add(const ColoredGraph& board, const Move& m) {
  exact_.emplace(to_text(board), m);
  const CanonicalForm form = canonical_form(board);
  Entry e;
  if (m.u != kFresh) e.u = form.labeling[static_cast<std::size_t>(m.u)];
  if (m.v != kFresh) e.v = form.labeling[static_cast<std::size_t>(m.v)];
  by_key_.emplace(form.key, e);
}

std::optional<Move> StrategyBook::lookup(const ColoredGraph& board) const {
  if (auto it = exact_.find(to_text(board)); it != exact_.end()) return it->second;
  const CanonicalForm form = canonical_form(board);
  auto it = by_key_.find(form.key);
  if (it == by_key_.end()) return std::nullopt;
  std::vector<int> vertex_at(form.labeling.size());
  for (std::size_t v = 0; v < form.labeling.size(); ++v) vertex_at[static_cast<std::size_t>(form.labeling[v])] = static_cast<int>(v);
  Move m;
  if (it->second.u != kFresh) m.u = vertex_at[static_cast<std::size_t>(it->second.u)];
  if (it->second.v != kFresh) m.v = vertex_at[static_cast<std::size_t>(it->second.v)];
  return m.normalized();
}

}  // namespace ramsey
