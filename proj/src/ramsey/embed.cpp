#include "ramsey/embed.hpp"

namespace ramsey {

namespace {

using Rows = std::array<VertexMask, kMaxVertices>;

VertexMask active_vertices(const Rows& rows, int n) {
  VertexMask out = 0;
  for (int v = 0; v < n; ++v) {
    if (rows[v]) out |= bit(v);
  }
  return out;
}

// Enumerates injective maps of the pattern into the host rows; f(map, used)
// returns true to stop. Returns true if stopped.
template <class F>
bool for_each_embedding(const Pattern& p, const Rows& rows, VertexMask hosts, F&& f) {
  std::array<int, kMaxVertices> map{};
  map.fill(-1);
  std::array<VertexMask, kMaxVertices> host_degree_ok{};
  for (int i = 0; i < p.n; ++i) {
    VertexMask ok = 0;
    for_each_bit(hosts, [&](int v) {
      if (popcount(rows[v]) >= p.degree[i]) ok |= bit(v);
    });
    host_degree_ok[i] = ok;
  }
  auto rec = [&](auto&& self, int depth, VertexMask used) -> bool {
    if (depth == p.n) return f(map, used);
    const int x = p.order[depth];
    VertexMask cand = host_degree_ok[x] & ~used;
    for_each_bit(p.adj[x], [&](int y) {
      if (map[y] >= 0) cand &= rows[map[y]];
    });
    while (cand) {
      const int v = lowest(cand);
      cand &= cand - 1;
      map[x] = v;
      if (self(self, depth + 1, used | bit(v))) return true;
    }
    map[x] = -1;
    return false;
  };
  return rec(rec, 0, 0);
}

// Simple paths from `start` with up to `max_len` edges, as (vertex set, end, length).
struct PathInfo {
  VertexMask mask;
  int length;
};

void collect_paths(const Rows& rows, int v, VertexMask mask, int length, int max_len, std::vector<PathInfo>& out) {
  out.push_back({mask, length});
  if (length == max_len) return;
  for_each_bit(rows[v] & ~mask, [&](int w) { collect_paths(rows, w, mask | bit(w), length + 1, max_len, out); });
}

bool has_path_from(const Rows& rows, int v, VertexMask mask, int remaining) {
  if (remaining == 0) return true;
  VertexMask next = rows[v] & ~mask;
  while (next) {
    int w = lowest(next);
    next &= next - 1;
    if (has_path_from(rows, w, mask | bit(w), remaining - 1)) return true;
  }
  return false;
}

bool contains_path(const Rows& rows, int n, int k) {
  if (k <= 1) return true;
  for (int v = 0; v < n; ++v) {
    if (rows[v] && has_path_from(rows, v, bit(v), k - 1)) return true;
  }
  return false;
}

// Paths of exactly `remaining` more edges from v ending adjacent to `start`.
bool closes_cycle(const Rows& rows, int start, int v, VertexMask mask, int remaining, VertexMask allowed) {
  if (remaining == 0) return (rows[v] >> start) & 1U;
  VertexMask next = rows[v] & ~mask & allowed;
  while (next) {
    int w = lowest(next);
    next &= next - 1;
    if (closes_cycle(rows, start, w, mask | bit(w), remaining - 1, allowed)) return true;
  }
  return false;
}

bool contains_cycle(const Rows& rows, int n, int k) {
  for (int s = 0; s < n; ++s) {
    // s is the smallest vertex of the cycle.
    VertexMask allowed = ~low_bits(s + 1);
    if (popcount(rows[s] & allowed) < 2) continue;
    if (closes_cycle(rows, s, s, bit(s), k - 1, allowed)) return true;
  }
  return false;
}

bool has_clique(const Rows& rows, VertexMask cand, int k) {
  if (k == 0) return true;
  if (popcount(cand) < k) return false;
  while (cand) {
    int v = lowest(cand);
    cand &= cand - 1;
    if (has_clique(rows, cand & rows[v], k - 1)) return true;
  }
  return false;
}

void add_all_pairs(PairSet& out, const ColoredGraph& g, VertexMask among, bool with_fresh, bool fresh_fresh) {
  for_each_bit(among, [&](int u) {
    for_each_bit(among & ~low_bits(u + 1) & ~g.neighbors(u), [&](int v) { out.add(u, v); });
    if (with_fresh) out.add(u, kFresh);
  });
  if (fresh_fresh) out.add(kFresh, kFresh);
}

}  // namespace

void PairSet::add(int u, int v) noexcept {
  if (u == kFresh && v == kFresh) {
    fresh_fresh_ = true;
  } else if (u == kFresh || v == kFresh) {
    with_fresh_ |= bit(u == kFresh ? v : u);
  } else {
    rows_[u] |= bit(v);
    rows_[v] |= bit(u);
  }
}

bool PairSet::contains(const Move& m) const noexcept {
  if (m.u == kFresh && m.v == kFresh) return fresh_fresh_;
  if (m.u == kFresh || m.v == kFresh) return (with_fresh_ >> (m.u == kFresh ? m.v : m.u)) & 1U;
  return (rows_[m.u] >> m.v) & 1U;
}

bool PairSet::empty() const noexcept {
  if (fresh_fresh_ || with_fresh_) return false;
  for (VertexMask r : rows_) {
    if (r) return false;
  }
  return true;
}

int PairSet::size() const noexcept {
  int twice = 0;
  for (VertexMask r : rows_) twice += popcount(r);
  return twice / 2 + popcount(with_fresh_) + (fresh_fresh_ ? 1 : 0);
}

PairSet PairSet::operator&(const PairSet& other) const noexcept {
  PairSet out;
  for (int i = 0; i < kMaxVertices; ++i) out.rows_[i] = rows_[i] & other.rows_[i];
  out.with_fresh_ = with_fresh_ & other.with_fresh_;
  out.fresh_fresh_ = fresh_fresh_ && other.fresh_fresh_;
  return out;
}

std::vector<Move> PairSet::moves() const {
  std::vector<Move> out;
  for (int u = 0; u < kMaxVertices; ++u) for_each_bit(rows_[u] & ~low_bits(u + 1), [&](int v) { out.push_back({u, v}); });
  for_each_bit(with_fresh_, [&](int u) { out.push_back({u, kFresh}); });
  if (fresh_fresh_) out.push_back({kFresh, kFresh});
  return out;
}

std::optional<Move> PairSet::first() const {
  for (int u = 0; u < kMaxVertices; ++u) {
    VertexMask r = rows_[u] & ~low_bits(u + 1);
    if (r) return Move{u, lowest(r)};
  }
  if (with_fresh_) return Move{lowest(with_fresh_), kFresh};
  if (fresh_fresh_) return Move{kFresh, kFresh};
  return std::nullopt;
}

bool contains_mono_generic(const ColoredGraph& g, const Pattern& p, Color c) {
  if (p.n == 0) return true;
  const Rows& rows = g.rows(c);
  return for_each_embedding(p, rows, active_vertices(rows, g.vertex_count()),
                            [](const auto&, VertexMask) { return true; });
}

bool contains_mono(const ColoredGraph& g, const Target& t, Color c) {
  const Rows& rows = g.rows(c);
  const int n = g.vertex_count();
  switch (t.kind()) {
    case Target::Kind::Path:
      return contains_path(rows, n, t.parameter());
    case Target::Kind::Cycle:
      return contains_cycle(rows, n, t.parameter());
    case Target::Kind::Clique:
      if (t.parameter() <= 1) return true;
      for (int v = 0; v < n; ++v) {
        if (has_clique(rows, rows[v] & ~low_bits(v + 1), t.parameter() - 1)) return true;
      }
      return false;
    case Target::Kind::Explicit:
      break;
  }
  return contains_mono_generic(g, t.pattern(), c);
}

PairSet threat_pairs_generic(const ColoredGraph& g, const Target& t, Color c) {
  PairSet out;
  const Pattern& full = t.pattern();
  if (full.n == 0) return out;
  const Rows& rows = g.rows(c);
  const int n = g.vertex_count();
  const bool room1 = n + 1 <= kMaxVertices;
  const bool room2 = n + 2 <= kMaxVertices;
  const VertexMask all = g.vertex_mask();

  for (int a = 0; a < full.n; ++a) {
    for_each_bit(full.adj[a] & ~low_bits(a + 1), [&](int b) {
      // Pattern without edge ab, keeping vertex numbering.
      std::vector<std::pair<int, int>> rest;
      for (int x = 0; x < full.n; ++x) {
        for_each_bit(full.adj[x] & ~low_bits(x + 1), [&](int y) {
          if (!(x == a && y == b)) rest.emplace_back(x, y);
        });
      }
      // Vertex ids of `reduced` are the non-isolated vertices of `rest` in order.
      Pattern reduced = Pattern::from_edges(full.n, rest);
      std::vector<int> id(full.n, -1);
      {
        int next = 0;
        for (int x = 0; x < full.n; ++x) {
          if (full.adj[x] & ~((x == a) ? bit(b) : (x == b) ? bit(a) : 0)) id[x] = next++;
        }
      }
      const int ia = id[a];
      const int ib = id[b];
      auto handle = [&](int ua, int ub, VertexMask used) {
        if (ua >= 0 && ub >= 0) {
          if (!g.has_edge(ua, ub)) out.add(ua, ub);
          return;
        }
        if (ua >= 0 || ub >= 0) {
          int fixed = ua >= 0 ? ua : ub;
          for_each_bit(all & ~used & ~g.neighbors(fixed) & ~bit(fixed), [&](int w) { out.add(fixed, w); });
          if (room1) out.add(fixed, kFresh);
          return;
        }
        add_all_pairs(out, g, all & ~used, room1, room2);
      };
      if (reduced.n == 0) {
        handle(-1, -1, 0);
        return;
      }
      for_each_embedding(reduced, rows, all, [&](const auto& map, VertexMask used) {
        handle(ia >= 0 ? map[ia] : -1, ib >= 0 ? map[ib] : -1, used);
        return false;
      });
    });
  }
  return out;
}

PairSet threat_pairs(const ColoredGraph& g, const Target& t, Color c) {
  const Rows& rows = g.rows(c);
  const int n = g.vertex_count();
  const int k = t.parameter();
  const VertexMask all = g.vertex_mask();
  PairSet out;
  if ((t.kind() == Target::Kind::Path || t.kind() == Target::Kind::Clique) && k == 2) {
    add_all_pairs(out, g, all, n + 1 <= kMaxVertices, n + 2 <= kMaxVertices);
    return out;
  }
  switch (t.kind()) {
    case Target::Kind::Path: {
      if (k <= 1) return out;
      const int need = k - 2;
      std::vector<std::vector<PathInfo>> paths(n);
      for (int v = 0; v < n; ++v) {
        if (rows[v] || need == 0) collect_paths(rows, v, bit(v), 0, need, paths[v]);
        else paths[v].push_back({bit(v), 0});
      }
      for (int u = 0; u < n; ++u) {
        bool long_enough = false;
        for (const auto& p : paths[u]) long_enough = long_enough || p.length >= need;
        if (long_enough && n + 1 <= kMaxVertices) out.add(u, kFresh);
        for (int v = u + 1; v < n; ++v) {
          if (g.has_edge(u, v)) continue;
          bool found = false;
          for (const auto& p : paths[u]) {
            if (found) break;
            if (p.mask & bit(v)) continue;
            for (const auto& q : paths[v]) {
              if (p.length + q.length >= need && !(p.mask & q.mask)) {
                found = true;
                break;
              }
            }
          }
          if (found) out.add(u, v);
        }
      }
      return out;
    }
    case Target::Kind::Cycle: {
      // u..v joined by a simple path with k-1 edges.
      auto rec = [&](auto&& self, int start, int v, VertexMask mask, int remaining) -> void {
        if (remaining == 0) {
          if (v > start && !g.has_edge(start, v)) out.add(start, v);
          return;
        }
        for_each_bit(rows[v] & ~mask, [&](int w) { self(self, start, w, mask | bit(w), remaining - 1); });
      };
      for (int s = 0; s < n; ++s) {
        if (rows[s]) rec(rec, s, s, bit(s), k - 1);
      }
      return out;
    }
    case Target::Kind::Clique: {
      for (int u = 0; u < n; ++u) {
        for_each_bit(all & ~low_bits(u + 1) & ~g.neighbors(u), [&](int v) {
          if (has_clique(rows, rows[u] & rows[v], k - 2)) out.add(u, v);
        });
      }
      return out;
    }
    case Target::Kind::Explicit:
      break;
  }
  return threat_pairs_generic(g, t, c);
}

int completion_deficit(const ColoredGraph& g, const Target& t, Color c) {
  const int e = t.edge_count();
  if (e == 0) return 0;
  const auto& family = t.cover_family();
  if (family.empty()) return contains_mono(g, t, c) ? 0 : 1;
  const Rows& rows = g.rows(c);
  const VertexMask hosts = active_vertices(rows, g.vertex_count());
  if (!hosts) return e;
  for (const Pattern& p : family) {
    if (for_each_embedding(p, rows, hosts, [](const auto&, VertexMask) { return true; })) return e - p.edges;
  }
  return e;
}

bool covers_edges(const ColoredGraph& g, const Target& t, Color c, int k) {
  if (k <= 0) return true;
  if (k > t.edge_count()) return false;
  const auto& family = t.cover_family();
  if (family.empty()) return completion_deficit(g, t, c) <= t.edge_count() - k;
  const Rows& rows = g.rows(c);
  const VertexMask hosts = active_vertices(rows, g.vertex_count());
  if (!hosts) return false;
  for (const Pattern& p : family) {
    if (p.edges < k) break;
    if (for_each_embedding(p, rows, hosts, [](const auto&, VertexMask) { return true; })) return true;
  }
  return false;
}

}  // namespace ramsey
