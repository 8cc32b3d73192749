#pragma once

#include <array>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "ramsey/graph.hpp"
#include "ramsey/target.hpp"

namespace ramsey {

// Builder decision-tree node over named vertices. A name not yet bound on the
// current line of play denotes a fresh vertex.
struct StrategyNode {
  std::string u;
  std::string v;
  bool win = false;                 // both colorings complete a target
  std::array<bool, 2> lose_if{};    // by Color: that coloring completes its target
  std::array<std::unique_ptr<StrategyNode>, 2> child;  // by Color
  int line = 0;

  StrategyNode() = default;
  StrategyNode(const StrategyNode& other);
  StrategyNode& operator=(const StrategyNode& other);
  StrategyNode(StrategyNode&&) noexcept = default;
  StrategyNode& operator=(StrategyNode&&) noexcept = default;

  const StrategyNode* on(Color c) const noexcept { return child[index(c)].get(); }
  // Deepest number of moves along any line, counting this one.
  int depth() const noexcept;
};

struct PatternEntry {
  std::string colors;  // one R/B per opening move
  std::string case_label;
  bool immediate = false;
  // Images of the opening vertices in declaration order; empty for identity.
  std::vector<std::string> relabel;
  int line = 0;
};

struct StrategyCase {
  std::string label;
  StrategyNode root;
  int line = 0;
};

struct StrategyFile {
  Target red = Target::path(2);
  Target blue = Target::path(2);
  int budget = 0;
  std::vector<std::string> alphabet;
  std::vector<std::pair<std::string, std::string>> opening;
  std::vector<PatternEntry> patterns;
  std::vector<StrategyCase> cases;

  const StrategyCase* find_case(std::string_view label) const;
  // Distinct opening vertex names in order of first use.
  std::vector<std::string> opening_vertices() const;
};

// Parses and structurally validates a strategy file. Syntax problems raise
// Error(Parse) with line/column; semantic problems raise MissingPattern,
// MalformedLeaf or Semantic naming the offending pattern or case.
StrategyFile parse_strategy(std::string_view text);
std::string to_text(const StrategyFile& file);

struct CaseLabel {
  std::string label;
  bool reversed = false;  // pattern is the mirror image of the case's own pattern
  bool immediate = false;
};

// Opening color pattern (edges A-B .. E-F) to case label for the bundled
// red C4 / blue P6 strategy.
std::map<std::string, CaseLabel> case_pattern_table();

// Bundled strategy text for red C4 versus blue P6 within 11 rounds.
std::string_view bundled_c4p6_strategy();

}  // namespace ramsey
