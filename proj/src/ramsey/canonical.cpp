#include "ramsey/canonical.hpp"

#include <algorithm>
#include <numeric>

namespace ramsey {

namespace {

using Cells = std::vector<VertexMask>;
using Code = std::vector<std::uint64_t>;

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) std::swap(a, b);
    parent[static_cast<std::size_t>(a)] = b;
  }
};

class Searcher {
 public:
  explicit Searcher(const ColoredGraph& g) : n_(g.vertex_count()), red_(g.rows(Color::Red)), blue_(g.rows(Color::Blue)) {}

  CanonicalForm run() {
    CanonicalForm form;
    if (n_ > 0) {
      Cells cells{low_bits(n_)};
      std::vector<int> seq;
      search(std::move(cells), seq);
    }
    form.labeling.assign(static_cast<std::size_t>(n_), 0);
    for (int i = 0; i < n_; ++i) form.labeling[static_cast<std::size_t>(best_perm_[static_cast<std::size_t>(i)])] = i;

    std::string bytes;
    bytes.push_back(static_cast<char>(n_));
    std::string body;
    int m = 0;
    for (int i = 0; i < n_; ++i) {
      std::uint64_t row = best_code_[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < n_; ++j) {
        auto c = static_cast<unsigned>((row >> (2 * j)) & 3U);
        if (c == 0) continue;
        unsigned packed = (static_cast<unsigned>(i) << 6) | (static_cast<unsigned>(j) << 1) | (c - 1);
        body.push_back(static_cast<char>(packed >> 8));
        body.push_back(static_cast<char>(packed & 0xFF));
        ++m;
      }
    }
    bytes.push_back(static_cast<char>(m));
    form.key = CanonicalKey(bytes + body);

    form.generators = std::move(gens_);
    UnionFind uf(n_);
    for (const auto& gen : form.generators) {
      for (int v = 0; v < n_; ++v) uf.unite(v, gen[static_cast<std::size_t>(v)]);
    }
    form.orbit.resize(static_cast<std::size_t>(n_));
    for (int v = 0; v < n_; ++v) form.orbit[static_cast<std::size_t>(v)] = uf.find(v);
    return form;
  }

 private:
  // Splits cells by red/blue neighbor counts into each cell until equitable.
  void refine(Cells& cells) const {
    std::size_t s = 0;
    std::array<int, kMaxVertices> key{};
    Cells next;
    while (s < cells.size()) {
      const VertexMask w = cells[s];
      bool split = false;
      next.clear();
      for (VertexMask x : cells) {
        if (popcount(x) == 1) {
          next.push_back(x);
          continue;
        }
        int lo = 1 << 30;
        int hi = -1;
        for_each_bit(x, [&](int v) {
          int k = popcount(red_[static_cast<std::size_t>(v)] & w) * 64 + popcount(blue_[static_cast<std::size_t>(v)] & w);
          key[static_cast<std::size_t>(v)] = k;
          lo = std::min(lo, k);
          hi = std::max(hi, k);
        });
        if (lo == hi) {
          next.push_back(x);
          continue;
        }
        split = true;
        int current = lo;
        while (true) {
          VertexMask part = 0;
          int following = 1 << 30;
          for_each_bit(x, [&](int v) {
            int k = key[static_cast<std::size_t>(v)];
            if (k == current) part |= bit(v);
            else if (k > current) following = std::min(following, k);
          });
          next.push_back(part);
          if (following == 1 << 30) break;
          current = following;
        }
      }
      if (split) {
        cells.swap(next);
        s = 0;
      } else {
        ++s;
      }
    }
  }

  Code code_of(const std::vector<int>& perm) const {
    std::vector<int> pos(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) pos[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = i;
    Code code(static_cast<std::size_t>(n_), 0);
    for (int i = 0; i < n_; ++i) {
      int v = perm[static_cast<std::size_t>(i)];
      std::uint64_t row = 0;
      for_each_bit(red_[static_cast<std::size_t>(v)], [&](int w) { row |= std::uint64_t{1} << (2 * pos[static_cast<std::size_t>(w)]); });
      for_each_bit(blue_[static_cast<std::size_t>(v)], [&](int w) { row |= std::uint64_t{2} << (2 * pos[static_cast<std::size_t>(w)]); });
      code[static_cast<std::size_t>(i)] = row;
    }
    return code;
  }

  static int common_prefix(const std::vector<int>& a, const std::vector<int>& b) {
    std::size_t i = 0;
    while (i < a.size() && i < b.size() && a[i] == b[i]) ++i;
    return static_cast<int>(i);
  }

  void record_automorphism(const std::vector<int>& from, const std::vector<int>& to) {
    std::vector<int> gen(static_cast<std::size_t>(n_));
    bool identity = true;
    for (int i = 0; i < n_; ++i) {
      gen[static_cast<std::size_t>(from[static_cast<std::size_t>(i)])] = to[static_cast<std::size_t>(i)];
      identity = identity && from[static_cast<std::size_t>(i)] == to[static_cast<std::size_t>(i)];
    }
    if (!identity && std::find(gens_.begin(), gens_.end(), gen) == gens_.end()) gens_.push_back(std::move(gen));
  }

  // Returns the depth whose node should continue its loop; smaller than the
  // caller's depth means the caller's subtree is an automorphic image of one
  // already explored.
  int leaf(const Cells& cells, const std::vector<int>& seq) {
    const int depth = static_cast<int>(seq.size());
    std::vector<int> perm;
    perm.reserve(cells.size());
    for (VertexMask c : cells) perm.push_back(lowest(c));
    Code code = code_of(perm);
    if (!have_first_) {
      have_first_ = true;
      first_perm_ = perm;
      first_code_ = code;
      first_seq_ = seq;
      best_perm_ = perm;
      best_code_ = std::move(code);
      best_seq_ = seq;
      return depth;
    }
    if (code == first_code_) {
      record_automorphism(first_perm_, perm);
      return common_prefix(seq, first_seq_);
    }
    if (code == best_code_) {
      record_automorphism(best_perm_, perm);
      return common_prefix(seq, best_seq_);
    }
    if (code < best_code_) {
      best_perm_ = std::move(perm);
      best_code_ = std::move(code);
      best_seq_ = seq;
    }
    return depth;
  }

  int search(Cells cells, std::vector<int>& seq) {
    refine(cells);
    const int depth = static_cast<int>(seq.size());
    std::size_t target = cells.size();
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (popcount(cells[i]) > 1) {
        target = i;
        break;
      }
    }
    if (target == cells.size()) return leaf(cells, seq);

    const VertexMask candidates = cells[target];
    VertexMask tried = 0;
    std::size_t gens_seen = 0;
    UnionFind uf(n_);
    VertexMask remaining = candidates;
    while (remaining) {
      const int v = lowest(remaining);
      remaining &= remaining - 1;
      // Absorb generators found since the last child that fix the prefix.
      for (; gens_seen < gens_.size(); ++gens_seen) {
        const auto& gen = gens_[gens_seen];
        bool fixes = std::all_of(seq.begin(), seq.end(), [&](int x) { return gen[static_cast<std::size_t>(x)] == x; });
        if (!fixes) continue;
        for (int x = 0; x < n_; ++x) uf.unite(x, gen[static_cast<std::size_t>(x)]);
      }
      bool pruned = false;
      for_each_bit(tried, [&](int w) { pruned = pruned || uf.find(w) == uf.find(v); });
      if (pruned) continue;
      tried |= bit(v);

      Cells child;
      child.reserve(cells.size() + 1);
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i == target) {
          child.push_back(bit(v));
          child.push_back(cells[i] & ~bit(v));
        } else {
          child.push_back(cells[i]);
        }
      }
      seq.push_back(v);
      int resume = search(std::move(child), seq);
      seq.pop_back();
      if (resume < depth) return resume;
    }
    return depth;
  }

  int n_;
  const std::array<VertexMask, kMaxVertices>& red_;
  const std::array<VertexMask, kMaxVertices>& blue_;

  bool have_first_ = false;
  std::vector<int> first_perm_, first_seq_, best_perm_, best_seq_;
  Code first_code_, best_code_;
  std::vector<std::vector<int>> gens_;
};

}  // namespace

std::string CanonicalKey::hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  for (unsigned char ch : bytes_) {
    out.push_back(kDigits[ch >> 4]);
    out.push_back(kDigits[ch & 15]);
  }
  return out;
}

CanonicalForm canonical_form(const ColoredGraph& g) { return Searcher(g).run(); }

CanonicalKey canonical_key(const ColoredGraph& g) { return canonical_form(g).key; }

std::vector<PairOrbit> automorphism_orbits(const ColoredGraph& g) { return automorphism_orbits(g, canonical_form(g)); }

std::vector<PairOrbit> automorphism_orbits(const ColoredGraph& g, const CanonicalForm& form) {
  const int n = g.vertex_count();
  std::vector<Move> pairs;
  std::vector<int> pair_index(static_cast<std::size_t>(n * n), -1);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (g.has_edge(u, v)) continue;
      pair_index[static_cast<std::size_t>(u * n + v)] = static_cast<int>(pairs.size());
      pairs.push_back({u, v});
    }
  }
  const int first_fresh = static_cast<int>(pairs.size());
  if (n + 1 <= kMaxVertices) {
    for (int u = 0; u < n; ++u) pairs.push_back({u, kFresh});
  }
  const bool fresh_pair = n + 2 <= kMaxVertices;
  if (fresh_pair) pairs.push_back({kFresh, kFresh});

  UnionFind uf(static_cast<int>(pairs.size()));
  for (const auto& gen : form.generators) {
    for (int i = 0; i < static_cast<int>(pairs.size()); ++i) {
      const Move& m = pairs[static_cast<std::size_t>(i)];
      if (m.u == kFresh) continue;
      int a = gen[static_cast<std::size_t>(m.u)];
      if (m.v == kFresh) {
        if (n + 1 <= kMaxVertices) uf.unite(i, first_fresh + a);
        continue;
      }
      int b = gen[static_cast<std::size_t>(m.v)];
      if (a > b) std::swap(a, b);
      uf.unite(i, pair_index[static_cast<std::size_t>(a * n + b)]);
    }
  }
  std::vector<PairOrbit> out;
  std::vector<int> slot(pairs.size(), -1);
  for (int i = 0; i < static_cast<int>(pairs.size()); ++i) {
    int root = uf.find(i);
    if (slot[static_cast<std::size_t>(root)] < 0) {
      slot[static_cast<std::size_t>(root)] = static_cast<int>(out.size());
      out.push_back({pairs[static_cast<std::size_t>(i)], {}});
    }
    out[static_cast<std::size_t>(slot[static_cast<std::size_t>(root)])].members.push_back(pairs[static_cast<std::size_t>(i)]);
  }
  return out;
}

}  // namespace ramsey
