#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "ramsey/graph.hpp"

namespace ramsey {

// Byte string identifying a colored graph up to color-preserving isomorphism.
class CanonicalKey {
 public:
  CanonicalKey() = default;
  explicit CanonicalKey(std::string bytes) : bytes_(std::move(bytes)) {}

  const std::string& bytes() const noexcept { return bytes_; }
  std::string hex() const;

  friend bool operator==(const CanonicalKey&, const CanonicalKey&) = default;
  friend auto operator<=>(const CanonicalKey&, const CanonicalKey&) = default;

 private:
  std::string bytes_;
};

struct CanonicalForm {
  CanonicalKey key;
  // labeling[v] is the canonical position of vertex v.
  std::vector<int> labeling;
  // Generators of the color-preserving automorphism group (vertex maps).
  std::vector<std::vector<int>> generators;
  // orbit[v] is the smallest vertex in v's automorphism orbit.
  std::vector<int> orbit;

  // The board relabeled into canonical positions.
  ColoredGraph canonical_board(const ColoredGraph& g) const { return g.relabeled(labeling); }
};

// Exact canonical labeling by color refinement plus individualization with
// automorphism pruning.
CanonicalForm canonical_form(const ColoredGraph& g);
CanonicalKey canonical_key(const ColoredGraph& g);

// Orbit of playable pairs under the board's automorphisms. Fresh endpoints are
// kFresh; a pair with one fresh endpoint stands for every (u, fresh) choice.
struct PairOrbit {
  Move representative;
  std::vector<Move> members;
};

// Partition of all playable pairs over V(g) plus two fresh vertices, ordered by
// representative. Throws Error(Capacity) above 32 vertices.
std::vector<PairOrbit> automorphism_orbits(const ColoredGraph& g);
std::vector<PairOrbit> automorphism_orbits(const ColoredGraph& g, const CanonicalForm& form);

}  // namespace ramsey

template <>
struct std::hash<ramsey::CanonicalKey> {
  std::size_t operator()(const ramsey::CanonicalKey& k) const noexcept { return std::hash<std::string>{}(k.bytes()); }
};
