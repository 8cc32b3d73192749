#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ramsey/target.hpp"

namespace ramsey {

struct KnownValue {
  std::string red;  // target specs as written in the catalog
  std::string blue;
  int lower = 0;
  int upper = 0;
  std::string source;
  std::vector<std::string> flags;

  bool exact() const noexcept { return lower == upper; }
  bool has_flag(std::string_view flag) const;
};

// Catalog of known values plus two formula families: r(K2, Kk) = C(k, 2) and
// the C4 versus Pk bounds for k >= 6.
class BoundsCatalog {
 public:
  static const BoundsCatalog& bundled();
  static BoundsCatalog parse(std::string_view text);

  // Symmetric in (red, blue); rows take precedence over formulas.
  std::optional<KnownValue> lookup(const Target& red, const Target& blue) const;

  const std::vector<KnownValue>& values() const noexcept { return values_; }
  bool has_formula(std::string_view name) const;

  // Human-readable table, one line per row or formula.
  std::string describe() const;

 private:
  std::vector<KnownValue> values_;
  std::vector<std::pair<std::string, std::string>> formulas_;  // name, source
};

// Lower and upper bound on r(C4, Pk) for k >= 6: upper 3k - 5, lower 2k - 1
// for k in {6, 7} and 2k - 2 from k = 8. Throws Error(InvalidArgument) below 6.
std::pair<int, int> c4_path_bounds(int k);

}  // namespace ramsey
