#include "ramsey/graph.hpp"

#include <algorithm>
#include <sstream>

#include "ramsey/text.hpp"

namespace ramsey {

std::optional<Color> color_from_char(char ch) noexcept {
  switch (ch) {
    case 'R':
    case 'r':
      return Color::Red;
    case 'B':
    case 'b':
      return Color::Blue;
    default:
      return std::nullopt;
  }
}

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::Capacity: return "Capacity";
    case ErrorCode::InvalidVertex: return "InvalidVertex";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::StateAlreadyWon: return "StateAlreadyWon";
    case ErrorCode::NoStrategy: return "NoStrategy";
    case ErrorCode::MissingPattern: return "MissingPattern";
    case ErrorCode::MalformedLeaf: return "MalformedLeaf";
    case ErrorCode::Semantic: return "Semantic";
    case ErrorCode::Io: return "Io";
    case ErrorCode::Aborted: return "Aborted";
  }
  return "Unknown";
}

Move Move::normalized() const noexcept {
  if (u == kFresh) return Move{v, u};
  if (v != kFresh && v < u) return Move{v, u};
  return *this;
}

int ColoredGraph::edge_count(Color c) const noexcept {
  int twice = 0;
  for (int v = 0; v < n_; ++v) twice += popcount(adj_[index(c)][v]);
  return twice / 2;
}

std::optional<Color> ColoredGraph::color(int u, int v) const noexcept {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) return std::nullopt;
  if ((adj_[0][u] >> v) & 1U) return Color::Red;
  if ((adj_[1][u] >> v) & 1U) return Color::Blue;
  return std::nullopt;
}

std::vector<Edge> ColoredGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(static_cast<std::size_t>(m_));
  for (int u = 0; u < n_; ++u) {
    for (Color c : kColors) {
      for_each_bit(adj_[index(c)][u] & ~low_bits(u + 1), [&](int v) { out.push_back({u, v, c}); });
    }
  }
  std::sort(out.begin(), out.end(), [](const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  return out;
}

std::pair<int, int> ColoredGraph::resolve(const Move& m) const noexcept {
  int next = n_;
  int u = m.u == kFresh ? next++ : m.u;
  int v = m.v == kFresh ? next++ : m.v;
  return {u, v};
}

bool ColoredGraph::playable(const Move& m) const noexcept {
  if ((m.u != kFresh && (m.u < 0 || m.u >= n_)) || (m.v != kFresh && (m.v < 0 || m.v >= n_))) return false;
  if (m.u != kFresh && m.u == m.v) return false;
  if (m.fresh_count() > 0) return n_ + m.fresh_count() <= kMaxVertices;
  return !has_edge(m.u, m.v);
}

void ColoredGraph::insert(int u, int v, Color c) noexcept {
  adj_[index(c)][u] |= bit(v);
  adj_[index(c)][v] |= bit(u);
  ++m_;
}

ColoredGraph ColoredGraph::with_edge(const Move& m, Color c) const {
  for (int x : {m.u, m.v}) {
    if (x != kFresh && (x < 0 || x >= n_))
      throw Error(ErrorCode::InvalidVertex, "vertex " + std::to_string(x) + " is not on the board");
  }
  if (m.u != kFresh && m.u == m.v) throw Error(ErrorCode::SelfLoop, "self-loop at vertex " + std::to_string(m.u));
  if (n_ + m.fresh_count() > kMaxVertices)
    throw Error(ErrorCode::Capacity, "board would exceed " + std::to_string(kMaxVertices) + " vertices");
  if (m.fresh_count() == 0 && has_edge(m.u, m.v))
    throw Error(ErrorCode::DuplicateEdge,
                "edge " + std::to_string(m.u) + "-" + std::to_string(m.v) + " is already colored");
  ColoredGraph out = *this;
  auto [u, v] = resolve(m);
  out.n_ = std::max({n_, u + 1, v + 1});
  out.insert(u, v, c);
  return out;
}

ColoredGraph ColoredGraph::relabeled(std::span<const int> perm) const {
  if (static_cast<int>(perm.size()) != n_) throw Error(ErrorCode::InvalidArgument, "permutation size mismatch");
  VertexMask seen = 0;
  for (int p : perm) {
    if (p < 0 || p >= n_ || (seen & bit(p))) throw Error(ErrorCode::InvalidArgument, "not a permutation");
    seen |= bit(p);
  }
  ColoredGraph out;
  out.n_ = n_;
  for (const Edge& e : edges()) out.insert(perm[e.u], perm[e.v], e.color);
  return out;
}

ColoredGraph ColoredGraph::color_swapped() const {
  ColoredGraph out = *this;
  std::swap(out.adj_[0], out.adj_[1]);
  return out;
}

ColoredGraph ColoredGraph::from_edges(int n, std::span<const Edge> edges) {
  if (n < 0 || n > kMaxVertices)
    throw Error(ErrorCode::Capacity, "vertex count " + std::to_string(n) + " outside [0, 32]");
  ColoredGraph g;
  g.n_ = n;
  for (const Edge& e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n)
      throw Error(ErrorCode::InvalidVertex, "edge endpoint outside [0, " + std::to_string(n) + ")");
    if (e.u == e.v) throw Error(ErrorCode::SelfLoop, "self-loop at vertex " + std::to_string(e.u));
    if (g.has_edge(e.u, e.v))
      throw Error(ErrorCode::DuplicateEdge, "duplicate edge " + std::to_string(e.u) + "-" + std::to_string(e.v));
    g.insert(e.u, e.v, e.color);
  }
  for (int v = 0; v < n; ++v) {
    if (g.neighbors(v) == 0) throw Error(ErrorCode::InvalidVertex, "vertex " + std::to_string(v) + " is isolated");
  }
  return g;
}

ColoredGraph add_edge(const ColoredGraph& g, int u, int v, Color c) { return g.with_edge(u, v, c); }

std::string to_text(const ColoredGraph& g) {
  std::ostringstream os;
  os << "vertices " << g.vertex_count() << " edges " << g.edge_count() << '\n';
  for (const Edge& e : g.edges()) os << e.u << ' ' << e.v << ' ' << to_char(e.color) << '\n';
  return os.str();
}

ColoredGraph graph_from_text(std::string_view text) {
  LineReader reader(text);
  int n = -1;
  int m = -1;
  std::vector<Edge> edges;
  while (auto line = reader.next()) {
    const auto& tok = line->tokens;
    if (n < 0) {
      if (tok.size() != 4 || tok[0] != "vertices" || tok[2] != "edges")
        throw reader.error("expected `vertices <n> edges <m>`");
      n = parse_int(tok[1], reader);
      m = parse_int(tok[3], reader);
      continue;
    }
    if (tok.size() != 3 || tok[2].size() != 1 || !color_from_char(tok[2][0]))
      throw reader.error("expected `<u> <v> <R|B>`");
    edges.push_back({parse_int(tok[0], reader), parse_int(tok[1], reader), *color_from_char(tok[2][0])});
  }
  if (n < 0) throw Error(ErrorCode::Parse, "missing `vertices <n> edges <m>` header");
  if (static_cast<int>(edges.size()) != m)
    throw Error(ErrorCode::Parse, "header declares " + std::to_string(m) + " edges, found " +
                                      std::to_string(edges.size()));
  return ColoredGraph::from_edges(n, edges);
}

std::string display_name(int vertex) {
  if (vertex >= 0 && vertex < 26) return std::string(1, static_cast<char>('A' + vertex));
  return "V" + std::to_string(vertex);
}

}  // namespace ramsey
