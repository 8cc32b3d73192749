#include "ramsey/strategy.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "ramsey/assets.hpp"
#include "ramsey/text.hpp"

namespace ramsey {

namespace {

bool valid_name(const std::string& s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), [](char ch) { return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'; });
}

std::optional<Color> branch_color(const std::vector<std::string>& tok) {
  // `on R:` or `on R :`
  if (tok.size() == 2 && tok[1].size() == 2 && tok[1][1] == ':') return color_from_char(tok[1][0]);
  if (tok.size() == 3 && tok[1].size() == 1 && tok[2] == ":") return color_from_char(tok[1][0]);
  return std::nullopt;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : reader_(text) {}

  StrategyFile run() {
    bool have_targets = false;
    bool have_budget = false;
    while (auto line = reader_.next()) {
      const auto& tok = line->tokens;
      if (line->indent != 0) throw reader_.error("unexpected indentation", line->indent + 1);
      const std::string& head = tok[0];
      if (head == "targets") {
        if (tok.size() != 3 || !tok[1].starts_with("RED=") || !tok[2].starts_with("BLUE="))
          throw reader_.error("expected `targets RED=<spec> BLUE=<spec>`");
        file_.red = target_or_throw(tok[1].substr(4));
        file_.blue = target_or_throw(tok[2].substr(5));
        have_targets = true;
      } else if (head == "budget") {
        if (tok.size() != 2) throw reader_.error("expected `budget <n>`");
        file_.budget = parse_int(tok[1], reader_);
        if (file_.budget < 0) throw reader_.error("budget must be non-negative");
        have_budget = true;
      } else if (head == "alphabet") {
        for (std::size_t i = 1; i < tok.size(); ++i) {
          if (!valid_name(tok[i])) throw reader_.error("bad vertex name `" + tok[i] + "`");
          if (std::find(file_.alphabet.begin(), file_.alphabet.end(), tok[i]) != file_.alphabet.end())
            throw reader_.error("vertex name `" + tok[i] + "` declared twice");
          file_.alphabet.push_back(tok[i]);
        }
      } else if (head == "opening") {
        if (tok.size() != 3) throw reader_.error("expected `opening <u> <v>`");
        if (!file_.patterns.empty() || !file_.cases.empty()) throw reader_.error("opening moves must precede patterns");
        file_.opening.emplace_back(tok[1], tok[2]);
      } else if (head == "pattern") {
        parse_pattern(tok, line->number);
      } else if (head == "case") {
        if (tok.size() != 2) throw reader_.error("expected `case <label>`");
        if (file_.find_case(tok[1])) throw Error(ErrorCode::Semantic, "case " + tok[1] + " defined twice");
        auto first = reader_.peek();
        if (!first || first->indent == 0) throw reader_.error("case " + tok[1] + " has no tree");
        StrategyCase sc{tok[1], parse_node(first->indent), line->number};
        file_.cases.push_back(std::move(sc));
      } else {
        throw reader_.error("unknown directive `" + head + "`");
      }
    }
    if (!have_targets) throw Error(ErrorCode::Parse, "missing `targets` line");
    if (!have_budget) throw Error(ErrorCode::Parse, "missing `budget` line");
    validate();
    return std::move(file_);
  }

 private:
  Target target_or_throw(const std::string& spec) {
    try {
      return Target::parse(spec);
    } catch (const Error& e) {
      throw reader_.error(std::string("bad target: ") + e.what());
    }
  }

  void parse_pattern(const std::vector<std::string>& tok, int line) {
    // pattern <colors> case <label> [immediate] [relabel <names...>]
    if (tok.size() < 4 || tok[2] != "case") throw reader_.error("expected `pattern <colors> case <label> ...`");
    PatternEntry entry;
    entry.colors = tok[1] == "-" ? "" : tok[1];
    for (std::size_t i = 0; i < entry.colors.size(); ++i) {
      if (entry.colors[i] != 'R' && entry.colors[i] != 'B')
        throw reader_.error("pattern colors must be R or B", static_cast<int>(9 + i));
    }
    entry.case_label = tok[3];
    entry.line = line;
    std::size_t i = 4;
    if (i < tok.size() && tok[i] == "immediate") {
      entry.immediate = true;
      ++i;
    }
    if (i < tok.size()) {
      if (tok[i] != "relabel") throw reader_.error("unexpected `" + tok[i] + "` in pattern line");
      entry.relabel.assign(tok.begin() + static_cast<std::ptrdiff_t>(i) + 1, tok.end());
      if (entry.relabel.empty()) throw reader_.error("relabel needs the images of the opening vertices");
    }
    file_.patterns.push_back(std::move(entry));
  }

  StrategyNode parse_node(int indent) {
    auto line = reader_.next();
    if (!line || line->indent != indent || line->tokens[0] != "move" || line->tokens.size() != 3)
      throw reader_.error("expected `move <u> <v>`", indent + 1);
    StrategyNode node;
    node.u = line->tokens[1];
    node.v = line->tokens[2];
    node.line = line->number;
    while (auto next = reader_.peek()) {
      if (next->indent < indent) break;
      if (next->indent > indent) {
        reader_.next();
        throw reader_.error("unexpected indentation", next->indent + 1);
      }
      const auto& tok = next->tokens;
      if (tok[0] == "move" || tok[0] == "pattern" || tok[0] == "case") {
        if (tok[0] == "move") {
          reader_.next();
          throw reader_.error("second move in one node", indent + 1);
        }
        break;
      }
      reader_.next();
      if (tok.size() == 1 && tok[0] == "win") {
        node.win = true;
      } else if (tok.size() == 1 && (tok[0] == "lose-if-R" || tok[0] == "lose-if-B")) {
        Color c = tok[0].back() == 'R' ? Color::Red : Color::Blue;
        if (node.lose_if[index(c)]) throw reader_.error("repeated " + tok[0]);
        node.lose_if[index(c)] = true;
      } else if (tok[0] == "on") {
        auto c = branch_color(tok);
        if (!c) throw reader_.error("expected `on R:` or `on B:`");
        if (node.child[index(*c)]) throw reader_.error(std::string("second `on ") + to_char(*c) + ":` branch");
        auto first = reader_.peek();
        if (!first || first->indent <= indent) throw reader_.error("empty branch", indent + 1);
        node.child[index(*c)] = std::make_unique<StrategyNode>(parse_node(first->indent));
      } else {
        throw reader_.error("unknown node statement `" + tok[0] + "`", indent + 1);
      }
    }
    return node;
  }

  void validate_node(const StrategyNode& node, const std::string& label) const {
    auto where = "case " + label + " line " + std::to_string(node.line);
    for (const auto& name : {node.u, node.v}) {
      if (std::find(file_.alphabet.begin(), file_.alphabet.end(), name) == file_.alphabet.end())
        throw Error(ErrorCode::Semantic, where + ": unresolved vertex name `" + name + "`");
    }
    if (node.u == node.v) throw Error(ErrorCode::Semantic, where + ": move joins a vertex to itself");
    if (node.win) {
      if (node.child[0] || node.child[1] || node.lose_if[0] || node.lose_if[1])
        throw Error(ErrorCode::MalformedLeaf, where + ": `win` leaf must not carry branches");
      return;
    }
    for (Color c : kColors) {
      bool has_child = node.child[index(c)] != nullptr;
      if (has_child == node.lose_if[index(c)])
        throw Error(ErrorCode::MalformedLeaf, where + ": color " + to_char(c) + " needs exactly one of `on " +
                                                  to_char(c) + ":` or `lose-if-" + to_char(c) + "`");
    }
    if (node.lose_if[0] && node.lose_if[1])
      throw Error(ErrorCode::MalformedLeaf, where + ": both colors lose; mark the node `win`");
    for (Color c : kColors) {
      if (const StrategyNode* kid = node.on(c)) validate_node(*kid, label);
    }
  }

  void validate() const {
    for (const auto& [u, v] : file_.opening) {
      for (const auto& name : {u, v}) {
        if (std::find(file_.alphabet.begin(), file_.alphabet.end(), name) == file_.alphabet.end())
          throw Error(ErrorCode::Semantic, "opening: unresolved vertex name `" + name + "`");
      }
      if (u == v) throw Error(ErrorCode::Semantic, "opening move joins a vertex to itself");
    }
    const std::size_t k = file_.opening.size();
    if (k > 20) throw Error(ErrorCode::Semantic, "opening longer than 20 moves");
    const auto opening_vertices = file_.opening_vertices();
    std::set<std::string> seen;
    for (const auto& p : file_.patterns) {
      auto where = "pattern " + (p.colors.empty() ? std::string("-") : p.colors);
      if (p.colors.size() != k)
        throw Error(ErrorCode::Semantic, where + ": expected " + std::to_string(k) + " colors");
      if (!seen.insert(p.colors).second) throw Error(ErrorCode::Semantic, where + ": duplicate pattern entry");
      if (!p.immediate && !file_.find_case(p.case_label))
        throw Error(ErrorCode::Semantic, where + ": unknown case " + p.case_label);
      if (!p.relabel.empty()) {
        std::set<std::string> images(p.relabel.begin(), p.relabel.end());
        std::set<std::string> domain(opening_vertices.begin(), opening_vertices.end());
        if (p.relabel.size() != opening_vertices.size() || images != domain)
          throw Error(ErrorCode::Semantic, where + ": relabel is not a permutation of the opening vertices");
      }
    }
    for (std::uint32_t s = 0; s < (std::uint32_t{1} << k); ++s) {
      std::string colors;
      for (std::size_t i = 0; i < k; ++i) colors.push_back((s >> (k - 1 - i)) & 1U ? 'R' : 'B');
      if (!seen.count(colors))
        throw Error(ErrorCode::MissingPattern, "missing pattern " + (colors.empty() ? std::string("-") : colors));
    }
    for (const auto& c : file_.cases) {
      validate_node(c.root, c.label);
      int rounds = static_cast<int>(k) + c.root.depth();
      if (rounds > file_.budget)
        throw Error(ErrorCode::Semantic, "case " + c.label + " needs " + std::to_string(rounds) +
                                             " rounds, over the budget of " + std::to_string(file_.budget));
    }
  }

  LineReader reader_;
  StrategyFile file_;
};

void write_node(std::ostringstream& os, const StrategyNode& node, int indent) {
  std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  os << pad << "move " << node.u << ' ' << node.v << '\n';
  if (node.win) {
    os << pad << "win\n";
    return;
  }
  for (Color c : {Color::Blue, Color::Red}) {
    if (node.lose_if[index(c)]) os << pad << "lose-if-" << to_char(c) << '\n';
    if (const StrategyNode* kid = node.on(c)) {
      os << pad << "on " << to_char(c) << ":\n";
      write_node(os, *kid, indent + 1);
    }
  }
}

}  // namespace

StrategyNode::StrategyNode(const StrategyNode& other)
    : u(other.u), v(other.v), win(other.win), lose_if(other.lose_if), line(other.line) {
  for (int i = 0; i < 2; ++i) {
    if (other.child[i]) child[i] = std::make_unique<StrategyNode>(*other.child[i]);
  }
}

StrategyNode& StrategyNode::operator=(const StrategyNode& other) {
  if (this != &other) *this = StrategyNode(other);
  return *this;
}

int StrategyNode::depth() const noexcept {
  int deepest = 0;
  for (const auto& kid : child) {
    if (kid) deepest = std::max(deepest, kid->depth());
  }
  return 1 + deepest;
}

const StrategyCase* StrategyFile::find_case(std::string_view label) const {
  for (const auto& c : cases) {
    if (c.label == label) return &c;
  }
  return nullptr;
}

std::vector<std::string> StrategyFile::opening_vertices() const {
  std::vector<std::string> out;
  for (const auto& [u, v] : opening) {
    for (const auto& name : {u, v}) {
      if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
    }
  }
  return out;
}

StrategyFile parse_strategy(std::string_view text) { return Parser(text).run(); }

std::string to_text(const StrategyFile& file) {
  std::ostringstream os;
  os << "targets RED=" << file.red.spec() << " BLUE=" << file.blue.spec() << '\n';
  os << "budget " << file.budget << '\n';
  os << "alphabet";
  for (const auto& name : file.alphabet) os << ' ' << name;
  os << '\n';
  for (const auto& [u, v] : file.opening) os << "opening " << u << ' ' << v << '\n';
  os << '\n';
  for (const auto& p : file.patterns) {
    os << "pattern " << (p.colors.empty() ? "-" : p.colors) << " case " << p.case_label;
    if (p.immediate) os << " immediate";
    if (!p.relabel.empty()) {
      os << " relabel";
      for (const auto& name : p.relabel) os << ' ' << name;
    }
    os << '\n';
  }
  for (const auto& c : file.cases) {
    os << "\ncase " << c.label << '\n';
    write_node(os, c.root, 1);
  }
  return os.str();
}

std::map<std::string, CaseLabel> case_pattern_table() {
  static const std::pair<const char*, const char*> kCases[] = {
      {"BBBBR", "B1"}, {"BBBRB", "B2"}, {"BBRBB", "B3"}, {"BBBRR", "B4"}, {"RBBBR", "B5"},
      {"BBRBR", "B6"}, {"BRBBR", "B7"}, {"BRRBB", "B8"}, {"BRBRB", "B9"}, {"RRRRR", "R0"},
      {"RRRRB", "R1"}, {"RRRBR", "R2"}, {"RRBRR", "R3"}, {"RRRBB", "R4"}, {"BRRRB", "R5"},
      {"RRBRB", "R6"}, {"RBRRB", "R7"}, {"RBBRR", "R8"}, {"RBRBR", "R9"},
  };
  std::map<std::string, CaseLabel> table;
  table["BBBBB"] = {"B0", false, true};
  for (auto [pattern, label] : kCases) table[pattern] = {label, false, false};
  for (std::uint32_t s = 0; s < 32; ++s) {
    std::string p;
    for (int i = 4; i >= 0; --i) p.push_back((s >> i) & 1U ? 'R' : 'B');
    if (table.count(p)) continue;
    std::string rev(p.rbegin(), p.rend());
    const auto& base = table.at(rev);
    table[p] = {base.label, true, base.immediate};
  }
  return table;
}

std::string_view bundled_c4p6_strategy() { return assets::kC4P6Strategy; }

}  // namespace ramsey
