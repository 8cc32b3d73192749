#pragma once

#include <string>
#include <vector>

#include "ramsey/strategy.hpp"

namespace ramsey {

struct VerifyFailure {
  std::string case_label;
  std::string pattern;   // opening colors that led here
  std::string subcase;   // leaf letters below the failing node, e.g. "a" or "b-d"
  std::string colors;    // Painter's colors from the first round up to the failure
  int line = 0;
  std::string reason;

  // `R3(a)`, `R3(b-d)`, or just the case label when it has a single line.
  std::string location() const;
};

struct CaseReport {
  std::string label;
  bool pass = true;
  int branches = 0;
  int max_rounds = 0;
  int subcases = 0;
};

struct VerificationReport {
  bool pass = true;
  int budget = 0;
  // Painter color sequences examined, each ending in a completed target.
  int branches = 0;
  int max_rounds = 0;
  std::vector<CaseReport> cases;  // in file order
  std::vector<VerifyFailure> failures;
};

// Plays the opening under every color pattern and walks the selected case
// tree against every Painter choice, re-deriving each `lose-if` and `win`
// claim on the board. Never throws for a bad strategy; failures are reported.
VerificationReport verify(const StrategyFile& file);

// Leaf letters of a case: leaves (nodes without child blocks) in depth-first
// order with the blue branch first, named a, b, c, ...
std::string subcase_letter(int leaf_index);

std::string format_report(const VerificationReport& report);

}  // namespace ramsey
