#pragma once

#include <map>
#include <optional>
#include <string>
#include <unordered_map>

#include "ramsey/canonical.hpp"
#include "ramsey/strategy.hpp"

namespace ramsey {

// Builder moves of a strategy file indexed by position. Positions reached by
// a different move order are recognized through their canonical key.
class StrategyBook {
 public:
  explicit StrategyBook(const StrategyFile& file);
  static const StrategyBook& bundled_c4p6();

  const Target& red() const noexcept { return red_; }
  const Target& blue() const noexcept { return blue_; }
  int budget() const noexcept { return budget_; }
  bool covers(const Target& red, const Target& blue) const;

  // Builder's move on `board`, in the board's own labels; nullopt when the
  // position is not in the book.
  std::optional<Move> lookup(const ColoredGraph& board) const;
  std::size_t size() const noexcept { return by_key_.size(); }

 private:
  struct Entry {
    int u = kFresh;  // canonical positions, or kFresh
    int v = kFresh;
  };
  void add(const ColoredGraph& board, const Move& m);

  Target red_;
  Target blue_;
  int budget_ = 0;
  std::map<std::string, Move> exact_;
  std::unordered_map<CanonicalKey, Entry> by_key_;
};

}  // namespace ramsey
