#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ramsey {

enum class Color : std::uint8_t { Red = 0, Blue = 1 };

inline constexpr std::array<Color, 2> kColors{Color::Red, Color::Blue};

constexpr Color swap(Color c) noexcept { return c == Color::Red ? Color::Blue : Color::Red; }
constexpr int index(Color c) noexcept { return static_cast<int>(c); }
constexpr char to_char(Color c) noexcept { return c == Color::Red ? 'R' : 'B'; }
std::optional<Color> color_from_char(char ch) noexcept;

using VertexMask = std::uint32_t;

// Fixed-width adjacency rows bound the vertex count.
inline constexpr int kMaxVertices = 32;

// Placeholder endpoint for a vertex not yet on the board.
inline constexpr int kFresh = -1;

constexpr VertexMask bit(int v) noexcept { return VertexMask{1} << v; }
constexpr VertexMask low_bits(int n) noexcept {
  return n >= kMaxVertices ? ~VertexMask{0} : (VertexMask{1} << n) - 1;
}
constexpr int popcount(VertexMask m) noexcept { return std::popcount(m); }
constexpr int lowest(VertexMask m) noexcept { return std::countr_zero(m); }

// Calls f(v) for every set bit of m, lowest first.
template <class F>
void for_each_bit(VertexMask m, F&& f) {
  while (m) {
    f(lowest(m));
    m &= m - 1;
  }
}

enum class ErrorCode {
  InvalidArgument,
  DuplicateEdge,
  SelfLoop,
  Capacity,
  InvalidVertex,
  Parse,
  StateAlreadyWon,
  NoStrategy,
  MissingPattern,
  MalformedLeaf,
  Semantic,
  Io,
  Aborted,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message) : std::runtime_error(message), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

struct Edge {
  int u = 0;
  int v = 0;
  Color color = Color::Red;
  friend bool operator==(const Edge&, const Edge&) = default;
};

// Builder's choice of an unordered pair. Either endpoint may be kFresh; two
// kFresh endpoints denote two distinct new vertices.
struct Move {
  int u = kFresh;
  int v = kFresh;

  int fresh_count() const noexcept { return (u == kFresh) + (v == kFresh); }
  // Existing endpoint first, smaller id first.
  Move normalized() const noexcept;
  friend bool operator==(const Move&, const Move&) = default;
};

// Finite simple graph with one color per edge; the game board. Vertices are
// dense ids in [0, n) and every vertex has at least one incident edge.
class ColoredGraph {
 public:
  ColoredGraph() = default;

  // Builds a board from an explicit edge list over vertices [0, n).
  static ColoredGraph from_edges(int n, std::span<const Edge> edges);

  int vertex_count() const noexcept { return n_; }
  int edge_count() const noexcept { return m_; }
  int edge_count(Color c) const noexcept;
  bool empty() const noexcept { return m_ == 0; }
  VertexMask vertex_mask() const noexcept { return low_bits(n_); }

  bool has_edge(int u, int v) const noexcept { return ((adj_[0][u] | adj_[1][u]) >> v) & 1U; }
  std::optional<Color> color(int u, int v) const noexcept;
  VertexMask neighbors(int v, Color c) const noexcept { return adj_[index(c)][v]; }
  VertexMask neighbors(int v) const noexcept { return adj_[0][v] | adj_[1][v]; }
  int degree(int v, Color c) const noexcept { return popcount(adj_[index(c)][v]); }
  const std::array<VertexMask, kMaxVertices>& rows(Color c) const noexcept { return adj_[index(c)]; }

  // Sorted by (u, v) with u < v.
  std::vector<Edge> edges() const;

  // Endpoints the move would occupy; fresh endpoints get ids n and n+1.
  std::pair<int, int> resolve(const Move& m) const noexcept;
  // True when the move names two distinct vertices and is not an existing edge.
  bool playable(const Move& m) const noexcept;

  // Returns a new board with the edge added. Throws Error on a self-loop,
  // duplicate edge, unknown vertex or when capacity would be exceeded.
  ColoredGraph with_edge(const Move& m, Color c) const;
  ColoredGraph with_edge(int u, int v, Color c) const { return with_edge(Move{u, v}, c); }

  // perm[v] is the new id of vertex v; perm must be a permutation of [0, n).
  ColoredGraph relabeled(std::span<const int> perm) const;
  ColoredGraph color_swapped() const;

  friend bool operator==(const ColoredGraph&, const ColoredGraph&) = default;

 private:
  void insert(int u, int v, Color c) noexcept;

  int n_ = 0;
  int m_ = 0;
  std::array<std::array<VertexMask, kMaxVertices>, 2> adj_{};
};

ColoredGraph add_edge(const ColoredGraph& g, int u, int v, Color c);

// Text form: header `vertices n edges m`, then one `u v R|B` line per edge.
std::string to_text(const ColoredGraph& g);
ColoredGraph graph_from_text(std::string_view text);

std::string display_name(int vertex);

}  // namespace ramsey
