#include "ramsey/verify.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "ramsey/embed.hpp"

namespace ramsey {

namespace {

using Env = std::map<std::string, int>;

struct LeafRange {
  int first = 0;
  int last = 0;
};

void index_leaves(const StrategyNode& node, int& next, std::map<const StrategyNode*, LeafRange>& out) {
  LeafRange range{next, next};
  bool leaf = true;
  for (Color c : {Color::Blue, Color::Red}) {
    if (const StrategyNode* kid = node.on(c)) {
      leaf = false;
      index_leaves(*kid, next, out);
    }
  }
  if (leaf) ++next;
  range.last = std::max(range.first, next - 1);
  out[&node] = range;
}

class Walker {
 public:
  Walker(const StrategyFile& file, VerificationReport& report) : file_(file), report_(report) {}

  void run() {
    std::map<std::string, std::size_t> case_index;
    for (const auto& c : file_.cases) {
      case_index[c.label] = report_.cases.size();
      CaseReport cr;
      cr.label = c.label;
      int next = 0;
      index_leaves(c.root, next, leaves_);
      cr.subcases = next;
      report_.cases.push_back(cr);
    }
    const auto opening_names = file_.opening_vertices();
    for (const auto& p : file_.patterns) {
      pattern_ = &p;
      current_ = nullptr;
      const StrategyCase* sc = p.immediate ? nullptr : file_.find_case(p.case_label);
      if (sc) current_ = &report_.cases[case_index.at(sc->label)];
      subcases_ = current_ ? current_->subcases : 1;

      ColoredGraph board;
      Env env;
      bool closed = false;
      for (std::size_t i = 0; i < file_.opening.size() && !closed; ++i) {
        const auto& [u, v] = file_.opening[i];
        Move m{lookup(env, u), lookup(env, v)};
        if (!board.playable(m)) {
          fail(p.line, "", {0, 0}, "opening move " + u + " " + v + " is not playable");
          closed = true;
          break;
        }
        auto [iu, iv] = board.resolve(m);
        board = board.with_edge(m, p.colors[i] == 'R' ? Color::Red : Color::Blue);
        env[u] = iu;
        env[v] = iv;
        if (holds_target(board)) {
          close_branch(static_cast<int>(i) + 1);
          closed = true;
        }
      }
      if (closed) continue;
      if (p.immediate) {
        fail(p.line, p.colors, {0, 0}, "pattern is marked immediate but no target is complete after the opening");
        continue;
      }
      if (!sc) continue;
      Env case_env;
      if (p.relabel.empty()) {
        case_env = env;
      } else {
        bool bound = p.relabel.size() == opening_names.size();
        for (std::size_t i = 0; bound && i < opening_names.size(); ++i) {
          auto it = env.find(p.relabel[i]);
          bound = it != env.end();
          if (bound) case_env[opening_names[i]] = it->second;
        }
        if (!bound) {
          fail(p.line, p.colors, {0, 0}, "relabel names a vertex the opening does not place");
          continue;
        }
      }
      walk(sc->root, board, case_env, static_cast<int>(file_.opening.size()), p.colors);
    }
    for (const auto& cr : report_.cases) {
      report_.pass = report_.pass && cr.pass;
    }
    report_.pass = report_.pass && report_.failures.empty();
  }

 private:
  static int lookup(const Env& env, const std::string& name) {
    auto it = env.find(name);
    return it == env.end() ? kFresh : it->second;
  }

  bool completes(const ColoredGraph& g, Color c) const {
    return contains_mono(g, c == Color::Red ? file_.red : file_.blue, c);
  }
  bool holds_target(const ColoredGraph& g) const { return completes(g, Color::Red) || completes(g, Color::Blue); }

  void close_branch(int rounds) {
    ++report_.branches;
    report_.max_rounds = std::max(report_.max_rounds, rounds);
    if (current_) {
      ++current_->branches;
      current_->max_rounds = std::max(current_->max_rounds, rounds);
    }
  }

  void fail(int line, const std::string& colors, LeafRange range, std::string reason) {
    VerifyFailure f;
    f.case_label = pattern_->case_label;
    f.pattern = pattern_->colors.empty() ? "-" : pattern_->colors;
    if (subcases_ > 1) {
      f.subcase = subcase_letter(range.first);
      if (range.last > range.first) f.subcase += "-" + subcase_letter(range.last);
    }
    f.colors = colors;
    f.line = line;
    f.reason = std::move(reason);
    report_.failures.push_back(std::move(f));
    if (current_) current_->pass = false;
    report_.pass = false;
  }

  void walk(const StrategyNode& node, const ColoredGraph& board, Env env, int played, const std::string& colors) {
    const LeafRange range = leaves_.at(&node);
    const int round = played + 1;
    Move m{lookup(env, node.u), lookup(env, node.v)};
    if (!board.playable(m)) {
      std::string why = m.u != kFresh && m.v != kFresh && board.has_edge(m.u, m.v) ? "is already on the board"
                                                                                  : "is not playable";
      fail(node.line, colors, range, "move " + node.u + " " + node.v + " " + why);
      return;
    }
    if (round > file_.budget) {
      fail(node.line, colors, range,
           "move " + node.u + " " + node.v + " is round " + std::to_string(round) + ", over the budget of " +
               std::to_string(file_.budget));
      return;
    }
    auto [iu, iv] = board.resolve(m);
    env[node.u] = iu;
    env[node.v] = iv;
    for (Color c : {Color::Blue, Color::Red}) {
      const ColoredGraph child = board.with_edge(m, c);
      const std::string next_colors = colors + to_char(c);
      const bool done = completes(child, c);
      if (node.win || node.lose_if[index(c)]) {
        if (!done) {
          const std::string claim = node.win ? "win" : std::string("lose-if-") + to_char(c);
          fail(node.line, next_colors, range,
               "`" + claim + "` at move " + node.u + " " + node.v + " is false: coloring it " + to_char(c) +
                   " completes no target");
          continue;
        }
        close_branch(round);
        continue;
      }
      const StrategyNode* kid = node.on(c);
      if (!kid) continue;
      if (done) {
        close_branch(round);
        continue;
      }
      walk(*kid, child, env, round, next_colors);
    }
  }

  const StrategyFile& file_;
  VerificationReport& report_;
  std::map<const StrategyNode*, LeafRange> leaves_;
  const PatternEntry* pattern_ = nullptr;
  CaseReport* current_ = nullptr;
  int subcases_ = 1;
};

}  // namespace

std::string subcase_letter(int leaf_index) {
  if (leaf_index < 26) return std::string(1, static_cast<char>('a' + leaf_index));
  return "z" + std::to_string(leaf_index - 25);
}

std::string VerifyFailure::location() const {
  if (subcase.empty()) return case_label;
  return case_label + "(" + subcase + ")";
}

VerificationReport verify(const StrategyFile& file) {
  VerificationReport report;
  report.budget = file.budget;
  Walker(file, report).run();
  return report;
}

std::string format_report(const VerificationReport& report) {
  std::ostringstream os;
  for (const auto& c : report.cases) {
    os << "case " << c.label << ' ' << (c.pass ? "PASS" : "FAIL") << " branches=" << c.branches
       << " maxrounds=" << c.max_rounds << '\n';
  }
  for (const auto& f : report.failures) {
    os << "failure " << f.location() << " pattern=" << f.pattern << " line=" << f.line << ": " << f.reason << '\n';
  }
  os << (report.pass ? "PASS" : "FAIL") << " budget=" << report.budget << " maxrounds=" << report.max_rounds
     << " branches=" << report.branches << '\n';
  return os.str();
}

}  // namespace ramsey
