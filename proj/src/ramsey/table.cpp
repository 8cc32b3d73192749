#include "ramsey/table.hpp"

namespace ramsey {

std::optional<bool> TranspositionTable::probe(const CanonicalKey& key, int t) const {
  Shard& s = shard(key);
  std::lock_guard lock(s.mutex);
  auto it = s.map.find(key);
  if (it == s.map.end()) return std::nullopt;
  if (t >= it->second.win_within) return true;
  if (t <= it->second.survives) return false;
  return std::nullopt;
}

void TranspositionTable::store(const CanonicalKey& key, int t, bool builder_wins) {
  Shard& s = shard(key);
  std::lock_guard lock(s.mutex);
  auto it = s.map.find(key);
  if (it == s.map.end()) {
    if (s.map.size() * kShards >= limit_) return;
    it = s.map.emplace(key, Entry{}).first;
  }
  auto t16 = static_cast<std::int16_t>(t);
  if (builder_wins) {
    if (t16 < it->second.win_within) it->second.win_within = t16;
  } else if (t16 > it->second.survives) {
    it->second.survives = t16;
  }
}

std::size_t TranspositionTable::size() const {
  std::size_t total = 0;
  for (auto& s : shards_) {
    std::lock_guard lock(s.mutex);
    total += s.map.size();
  }
  return total;
}

void TranspositionTable::clear() {
  for (auto& s : shards_) {
    std::lock_guard lock(s.mutex);
    s.map.clear();
  }
}

}  // namespace ramsey
