#include "ramsey/target.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "ramsey/canonical.hpp"
#include "ramsey/text.hpp"

namespace ramsey {

namespace {

constexpr int kFamilyEdgeLimit = 14;

std::vector<std::pair<int, int>> normalized_edges(std::vector<std::pair<int, int>> edges) {
  for (auto& [u, v] : edges) {
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

// Every isomorphism class of edge-subgraph, largest first.
std::vector<Pattern> enumerate_family(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<Pattern> out;
  const int e = static_cast<int>(edges.size());
  if (e > kFamilyEdgeLimit) return out;
  std::vector<std::set<CanonicalKey>> seen(static_cast<std::size_t>(e) + 1);
  std::vector<std::pair<std::uint32_t, int>> subsets;
  for (std::uint32_t s = 1; s < (std::uint32_t{1} << e); ++s) subsets.emplace_back(s, std::popcount(s));
  std::stable_sort(subsets.begin(), subsets.end(), [](auto& a, auto& b) { return a.second > b.second; });
  for (auto [s, size] : subsets) {
    std::vector<std::pair<int, int>> sub;
    for (int i = 0; i < e; ++i) {
      if (s & (std::uint32_t{1} << i)) sub.push_back(edges[static_cast<std::size_t>(i)]);
    }
    Pattern p = Pattern::from_edges(n, sub);
    std::vector<Edge> board_edges;
    std::vector<int> remap(static_cast<std::size_t>(n), -1);
    int next = 0;
    for (auto [u, v] : sub) {
      for (int x : {u, v}) {
        if (remap[static_cast<std::size_t>(x)] < 0) remap[static_cast<std::size_t>(x)] = next++;
      }
      board_edges.push_back({remap[static_cast<std::size_t>(u)], remap[static_cast<std::size_t>(v)], Color::Red});
    }
    auto key = canonical_key(ColoredGraph::from_edges(next, board_edges));
    if (seen[static_cast<std::size_t>(size)].insert(key).second) out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

Pattern Pattern::from_edges(int n, std::span<const std::pair<int, int>> edges) {
  std::vector<VertexMask> full(static_cast<std::size_t>(n), 0);
  for (auto [u, v] : edges) {
    full[static_cast<std::size_t>(u)] |= bit(v);
    full[static_cast<std::size_t>(v)] |= bit(u);
  }
  std::vector<int> remap(static_cast<std::size_t>(n), -1);
  Pattern p;
  for (int v = 0; v < n; ++v) {
    if (full[static_cast<std::size_t>(v)]) remap[static_cast<std::size_t>(v)] = p.n++;
  }
  p.adj.assign(static_cast<std::size_t>(p.n), 0);
  for (auto [u, v] : edges) {
    int a = remap[static_cast<std::size_t>(u)];
    int b = remap[static_cast<std::size_t>(v)];
    p.adj[static_cast<std::size_t>(a)] |= bit(b);
    p.adj[static_cast<std::size_t>(b)] |= bit(a);
  }
  p.edges = static_cast<int>(edges.size());
  for (VertexMask row : p.adj) p.degree.push_back(popcount(row));

  // BFS per component, highest degree first.
  std::vector<int> by_degree(static_cast<std::size_t>(p.n));
  for (int i = 0; i < p.n; ++i) by_degree[static_cast<std::size_t>(i)] = i;
  std::stable_sort(by_degree.begin(), by_degree.end(),
                   [&](int a, int b) { return p.degree[static_cast<std::size_t>(a)] > p.degree[static_cast<std::size_t>(b)]; });
  VertexMask placed = 0;
  for (int start : by_degree) {
    if (placed & bit(start)) continue;
    std::vector<int> queue{start};
    placed |= bit(start);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      int x = queue[head];
      p.order.push_back(x);
      std::vector<int> next;
      for_each_bit(p.adj[static_cast<std::size_t>(x)] & ~placed, [&](int y) { next.push_back(y); });
      std::stable_sort(next.begin(), next.end(),
                       [&](int a, int b) { return p.degree[static_cast<std::size_t>(a)] > p.degree[static_cast<std::size_t>(b)]; });
      for (int y : next) {
        placed |= bit(y);
        queue.push_back(y);
      }
    }
  }
  return p;
}

Target Target::build(Kind kind, int parameter, int n, std::vector<std::pair<int, int>> edges, std::string spec) {
  if (n > kMaxVertices) throw Error(ErrorCode::Capacity, "target " + spec + " exceeds 32 vertices");
  auto data = std::make_shared<Data>();
  data->kind = kind;
  data->parameter = parameter;
  data->vertex_count = n;
  data->edges = normalized_edges(std::move(edges));
  data->pattern = Pattern::from_edges(n, data->edges);
  data->family = enumerate_family(n, data->edges);
  data->spec = std::move(spec);
  Target t;
  t.data_ = std::move(data);
  return t;
}

Target Target::path(int k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "path needs k >= 1");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < k; ++i) edges.emplace_back(i, i + 1);
  return build(Kind::Path, k, k, std::move(edges), "P" + std::to_string(k));
}

Target Target::cycle(int k) {
  if (k < 3) throw Error(ErrorCode::InvalidArgument, "cycle needs k >= 3");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < k; ++i) edges.emplace_back(i, (i + 1) % k);
  return build(Kind::Cycle, k, k, std::move(edges), "C" + std::to_string(k));
}

Target Target::clique(int k) {
  if (k < 2) throw Error(ErrorCode::InvalidArgument, "clique needs k >= 2");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) edges.emplace_back(i, j);
  }
  return build(Kind::Clique, k, k, std::move(edges), "K" + std::to_string(k));
}

Target Target::explicit_graph(int n, std::vector<std::pair<int, int>> edges, std::string spec) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "negative vertex count");
  std::set<std::pair<int, int>> seen;
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) throw Error(ErrorCode::InvalidVertex, "target edge outside vertex range");
    if (u == v) throw Error(ErrorCode::SelfLoop, "target has a self-loop");
    if (!seen.insert({std::min(u, v), std::max(u, v)}).second)
      throw Error(ErrorCode::DuplicateEdge, "target has a repeated edge");
  }
  return build(Kind::Explicit, n, n, std::move(edges), std::move(spec));
}

Target Target::parse(std::string_view spec) {
  if (spec.starts_with("file:")) {
    std::string path(spec.substr(5));
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot read target file " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    // Board format, but the color column is optional.
    int n = -1;
    std::vector<std::pair<int, int>> edges;
    std::istringstream lines(buffer.str());
    std::string line;
    while (std::getline(lines, line)) {
      if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
      auto tok = split_words(line);
      if (tok.empty()) continue;
      try {
        if (tok[0] == "vertices") {
          if (tok.size() < 2) throw Error(ErrorCode::Parse, "bad header");
          n = std::stoi(tok[1]);
        } else {
          if (tok.size() < 2 || tok.size() > 3) throw Error(ErrorCode::Parse, "expected `u v [color]`");
          edges.emplace_back(std::stoi(tok[0]), std::stoi(tok[1]));
        }
      } catch (const std::logic_error&) {
        throw Error(ErrorCode::Parse, "malformed target file " + path);
      }
    }
    if (n < 0) throw Error(ErrorCode::Parse, "target file " + path + " lacks a `vertices` header");
    return explicit_graph(n, std::move(edges), std::string(spec));
  }
  if (spec.size() < 2) throw Error(ErrorCode::InvalidArgument, "bad target `" + std::string(spec) + "`");
  int k = 0;
  for (char ch : spec.substr(1)) {
    if (ch < '0' || ch > '9' || k > 1000) throw Error(ErrorCode::InvalidArgument, "bad target `" + std::string(spec) + "`");
    k = k * 10 + (ch - '0');
  }
  switch (spec[0]) {
    case 'P':
      return path(k);
    case 'C':
      return cycle(k);
    case 'K':
      return clique(k);
    default:
      throw Error(ErrorCode::InvalidArgument, "bad target `" + std::string(spec) + "`");
  }
}

ColoredGraph Target::as_board() const {
  const Pattern& p = pattern();
  std::vector<Edge> edges;
  for (int u = 0; u < p.n; ++u) {
    for_each_bit(p.adj[static_cast<std::size_t>(u)] & ~low_bits(u + 1), [&](int v) { edges.push_back({u, v, Color::Red}); });
  }
  return ColoredGraph::from_edges(p.n, edges);
}

bool same_graph(const Target& a, const Target& b) {
  if (a.edge_count() != b.edge_count()) return false;
  return canonical_key(a.as_board()) == canonical_key(b.as_board());
}

}  // namespace ramsey
