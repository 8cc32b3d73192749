#pragma once

#include <optional>
#include <vector>

#include "ramsey/graph.hpp"
#include "ramsey/target.hpp"

namespace ramsey {

// Set of playable pairs over V(g) plus fresh vertices.
class PairSet {
 public:
  void add(int u, int v) noexcept;
  bool contains(const Move& m) const noexcept;
  bool empty() const noexcept;
  int size() const noexcept;
  PairSet operator&(const PairSet& other) const noexcept;
  // Ordered: existing pairs by (u, v), then (u, fresh) by u, then fresh-fresh.
  std::vector<Move> moves() const;
  std::optional<Move> first() const;
  friend bool operator==(const PairSet&, const PairSet&) = default;

 private:
  std::array<VertexMask, kMaxVertices> rows_{};
  VertexMask with_fresh_ = 0;
  bool fresh_fresh_ = false;
};

// True iff the c-colored subgraph of g contains a (not necessarily induced)
// copy of t. Uses the path/cycle/clique detectors where they apply.
bool contains_mono(const ColoredGraph& g, const Target& t, Color c);

// Backtracking embedder over any pattern; the reference for the detectors.
bool contains_mono_generic(const ColoredGraph& g, const Pattern& p, Color c);

// Playable pairs whose coloring in c completes a c-colored copy of t.
PairSet threat_pairs(const ColoredGraph& g, const Target& t, Color c);
PairSet threat_pairs_generic(const ColoredGraph& g, const Target& t, Color c);

// Lower bound on the number of c-colored edges still to be added before a
// c-colored copy of t can exist: edges of t minus the most edges of t that
// existing c-edges can cover. 0 iff g already contains the copy.
int completion_deficit(const ColoredGraph& g, const Target& t, Color c);

// True when the c-colored subgraph hosts some edge-subgraph of t with at least
// k edges, i.e. completion_deficit(g, t, c) <= |E(t)| - k.
bool covers_edges(const ColoredGraph& g, const Target& t, Color c, int k);

}  // namespace ramsey
