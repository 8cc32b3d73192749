#pragma once

#include <array>
#include <cstdint>
#include <mutex>
#include <optional>
#include <unordered_map>

#include "ramsey/canonical.hpp"

namespace ramsey {

// Memo of search results keyed by exact canonical key. Each entry keeps the
// fewest rounds known to suffice for Builder and the most rounds known not
// to, so a result is reused under any compatible round budget.
class TranspositionTable {
 public:
  explicit TranspositionTable(std::size_t limit) : limit_(limit) {}

  // Known answer to "Builder wins within t rounds", if any.
  std::optional<bool> probe(const CanonicalKey& key, int t) const;
  void store(const CanonicalKey& key, int t, bool builder_wins);

  std::size_t size() const;
  void clear();

 private:
  struct Entry {
    std::int16_t win_within = INT16_MAX;
    std::int16_t survives = -1;
  };
  struct Shard {
    mutable std::mutex mutex;
    std::unordered_map<CanonicalKey, Entry> map;
  };
  static constexpr std::size_t kShards = 64;

  Shard& shard(const CanonicalKey& key) const {
    return shards_[std::hash<CanonicalKey>{}(key) % kShards];
  }

  std::size_t limit_;
  mutable std::array<Shard, kShards> shards_;
};

}  // namespace ramsey
