#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ramsey/graph.hpp"

namespace ramsey {

// Uncolored pattern graph prepared for embedding. Isolated vertices are
// dropped: the board always has unused vertices to host them.
struct Pattern {
  int n = 0;
  int edges = 0;
  std::vector<VertexMask> adj;
  std::vector<int> degree;
  // Embedding order: within a component every vertex after the first has an
  // earlier neighbor.
  std::vector<int> order;

  static Pattern from_edges(int n, std::span<const std::pair<int, int>> edges);
};

// The graph Painter must avoid in one color: P_k, C_k, K_k or an explicit graph.
class Target {
 public:
  enum class Kind { Path, Cycle, Clique, Explicit };

  static Target path(int k);
  static Target cycle(int k);
  static Target clique(int k);
  static Target explicit_graph(int n, std::vector<std::pair<int, int>> edges, std::string spec);
  // `P<k>` (k >= 1), `C<k>` (k >= 3), `K<k>` (k >= 2) or `file:<path>` holding
  // the board text format (colors ignored).
  static Target parse(std::string_view spec);

  Kind kind() const noexcept { return data_->kind; }
  // k for the named families, vertex count for explicit graphs.
  int parameter() const noexcept { return data_->parameter; }
  int vertex_count() const noexcept { return data_->vertex_count; }
  int edge_count() const noexcept { return static_cast<int>(data_->edges.size()); }
  const std::vector<std::pair<int, int>>& edges() const noexcept { return data_->edges; }
  const Pattern& pattern() const noexcept { return data_->pattern; }
  const std::string& spec() const noexcept { return data_->spec; }

  // Edge-subgraphs of the pattern, one per isomorphism class, sorted by edge
  // count descending. Empty when the pattern is too large to enumerate.
  const std::vector<Pattern>& cover_family() const noexcept { return data_->family; }

  // The pattern as an all-red board; used for structural comparison.
  ColoredGraph as_board() const;

 private:
  struct Data {
    Kind kind = Kind::Explicit;
    int parameter = 0;
    int vertex_count = 0;
    std::vector<std::pair<int, int>> edges;
    Pattern pattern;
    std::vector<Pattern> family;
    std::string spec;
  };

  static Target build(Kind kind, int parameter, int n, std::vector<std::pair<int, int>> edges, std::string spec);

  std::shared_ptr<const Data> data_;
};

// True when both targets are the same graph up to isomorphism (P2 == K2).
bool same_graph(const Target& a, const Target& b);

}  // namespace ramsey
