#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "ramsey/embed.hpp"

using namespace ramsey;

namespace {

std::vector<Target> sample_targets() {
  return {Target::path(2), Target::path(3), Target::path(4), Target::path(5), Target::path(6),
          Target::cycle(3), Target::cycle(4), Target::cycle(5), Target::clique(3), Target::clique(4),
          Target::explicit_graph(4, {{0, 1}, {0, 2}, {0, 3}}, "star")};
}

// Every playable pair whose c-coloring makes the brute-force embedder succeed.
PairSet brute_threats(const ColoredGraph& g, const Target& t, Color c) {
  PairSet out;
  const int n = g.vertex_count();
  for (int u = 0; u < n + 2; ++u) {
    for (int v = u + 1; v < n + 2; ++v) {
      Move m{u < n ? u : kFresh, v < n ? v : kFresh};
      if (!g.playable(m)) continue;
      if (oracle::contains(g.with_edge(m, c), t, c)) out.add(m.u, m.v);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("detectors agree with brute force") {
  std::mt19937 rng(7);
  auto targets = sample_targets();
  for (int trial = 0; trial < 1000; ++trial) {
    auto g = oracle::random_board(rng, 8, 14);
    for (const auto& t : targets) {
      for (Color c : kColors) {
        bool expect = oracle::contains(g, t, c);
        REQUIRE(contains_mono(g, t, c) == expect);
        REQUIRE(contains_mono_generic(g, t.pattern(), c) == expect);
      }
    }
  }
}

TEST_CASE("threat pairs agree with brute force") {
  std::mt19937 rng(9);
  auto targets = sample_targets();
  for (int trial = 0; trial < 300; ++trial) {
    auto g = oracle::random_board(rng, 7, 10);
    for (const auto& t : targets) {
      for (Color c : kColors) {
        if (oracle::contains(g, t, c)) continue;
        auto expect = brute_threats(g, t, c);
        REQUIRE(threat_pairs(g, t, c) == expect);
        REQUIRE(threat_pairs_generic(g, t, c) == expect);
      }
    }
  }
}

TEST_CASE("completion deficit bounds the edges still needed") {
  std::mt19937 rng(13);
  auto targets = sample_targets();
  for (int trial = 0; trial < 300; ++trial) {
    auto g = oracle::random_board(rng, 7, 9);
    for (const auto& t : targets) {
      for (Color c : kColors) {
        int d = completion_deficit(g, t, c);
        CHECK((d == 0) == oracle::contains(g, t, c));
        if (d > 1) CHECK(brute_threats(g, t, c).empty());
        if (d > 0 && !brute_threats(g, t, c).empty()) CHECK(d == 1);
      }
    }
  }
  CHECK(completion_deficit(ColoredGraph{}, Target::path(6), Color::Blue) == 5);
  CHECK(completion_deficit(ColoredGraph{}, Target::cycle(4), Color::Red) == 4);
}

TEST_CASE("target parsing") {
  CHECK(Target::parse("P6").kind() == Target::Kind::Path);
  CHECK(Target::parse("C4").edge_count() == 4);
  CHECK(Target::parse("K4").edge_count() == 6);
  CHECK(same_graph(Target::path(2), Target::clique(2)));
  CHECK(same_graph(Target::cycle(3), Target::clique(3)));
  CHECK_FALSE(same_graph(Target::path(4), Target::cycle(4)));
  CHECK_THROWS_AS(Target::parse("C2"), Error);
  CHECK_THROWS_AS(Target::parse("Q5"), Error);
  CHECK_THROWS_AS(Target::parse("P"), Error);
}
