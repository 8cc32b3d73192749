#include <string>

#include "doctest.h"
#include "ramsey/catalog.hpp"
#include "ramsey/solver.hpp"
#include "ramsey/transcript.hpp"

using namespace ramsey;

TEST_CASE("bounds for C4 versus long paths") {
  CHECK(c4_path_bounds(6) == std::pair{11, 13});
  CHECK(c4_path_bounds(7) == std::pair{13, 16});
  CHECK(c4_path_bounds(8) == std::pair{14, 19});
  CHECK(c4_path_bounds(10) == std::pair{18, 25});
  CHECK_THROWS_AS(c4_path_bounds(5), Error);
}

TEST_CASE("catalog lookups") {
  const auto& cat = BoundsCatalog::bundled();
  auto c4p6 = cat.lookup(Target::cycle(4), Target::path(6));
  REQUIRE(c4p6);
  CHECK(c4p6->lower == 11);
  CHECK(c4p6->upper == 11);
  CHECK(c4p6->source == "strategy-verified");
  auto swapped = cat.lookup(Target::path(6), Target::cycle(4));
  REQUIRE(swapped);
  CHECK(swapped->lower == 11);
  auto c4p9 = cat.lookup(Target::cycle(4), Target::path(9));
  REQUIRE(c4p9);
  CHECK(c4p9->lower == 16);
  CHECK(c4p9->upper == 22);
  CHECK_FALSE(c4p9->exact());
  auto k2k5 = cat.lookup(Target::clique(2), Target::clique(5));
  REQUIRE(k2k5);
  CHECK(k2k5->lower == 10);
  CHECK(k2k5->exact());
  CHECK(cat.lookup(Target::clique(5), Target::clique(2))->upper == 10);
  CHECK_FALSE(cat.lookup(Target::cycle(5), Target::path(5)));
  CHECK(cat.lookup(Target::clique(3), Target::clique(4))->has_flag("unverified-at-desk-scale"));
  CHECK(cat.describe().find("r(C4,P6) = 11") != std::string::npos);
}

TEST_CASE("catalog parse errors") {
  CHECK_THROWS_AS(BoundsCatalog::parse("value C4 P6 11\n"), Error);
  CHECK_THROWS_AS(BoundsCatalog::parse("value C4 P6 12 11 literature\n"), Error);
  CHECK_THROWS_AS(BoundsCatalog::parse("formula nonsense literature\n"), Error);
  CHECK_THROWS_AS(BoundsCatalog::parse("weird line\n"), Error);
  CHECK(BoundsCatalog::parse("# only comments\n").values().empty());
}

TEST_CASE("solver reproduces every desk-scale exact catalog entry") {
  const auto& cat = BoundsCatalog::bundled();
  int checked = 0;
  for (const auto& v : cat.values()) {
    if (!v.exact() || v.has_flag("unverified-at-desk-scale")) continue;
    CAPTURE(v.red);
    CAPTURE(v.blue);
    const auto red = Target::parse(v.red);
    const auto blue = Target::parse(v.blue);
    const auto out = online_size_ramsey(red, blue, v.upper);
    CHECK(out.builder_wins());
    CHECK(out.exact);
    CHECK(out.rounds == v.upper);
    ++checked;
  }
  CHECK(checked == 7);
  for (int k = 2; k <= 4; ++k) {
    auto expected = cat.lookup(Target::clique(2), Target::clique(k));
    REQUIRE(expected);
    CHECK(online_size_ramsey(Target::clique(2), Target::clique(k), expected->upper).rounds == expected->upper);
  }
}

TEST_CASE("transcript text round trip and replay") {
  const std::string text =
      "# targets RED=C4 BLUE=P3\n"
      "# note two fresh vertices first\n"
      "1 0 1 R\n"
      "2 0 2 R\n"
      "3 1 3 R\n"
      "4 2 3 B\n"
      "5 0 3 R\n"
      "6 1 2 R\n";
  const auto t = parse_transcript(text);
  CHECK(t.moves.size() == 6);
  CHECK(t.get("targets") == "RED=C4 BLUE=P3");
  CHECK(to_text(t) == text);
  const auto targets = transcript_targets(t);
  REQUIRE(targets);
  const auto s = replay(t, targets->first, targets->second);
  CHECK(s.terminal());
  CHECK(s.completed() == Color::Red);
  CHECK(s.rounds_played() == 6);
}

TEST_CASE("replay errors name the round") {
  auto fails_at = [](const std::string& text, const std::string& round) {
    try {
      replay(parse_transcript(text), Target::cycle(4), Target::path(3));
      return false;
    } catch (const Error& e) {
      return std::string(e.what()).starts_with(round);
    }
  };
  CHECK(fails_at("1 0 1 R\n2 0 1 B\n", "round 2"));
  CHECK(fails_at("1 0 1 R\n2 1 5 B\n", "round 2"));
  CHECK(fails_at("1 0 1 R\n3 1 2 B\n", "round 3"));
  CHECK(fails_at("1 0 1 B\n2 1 2 B\n3 2 3 R\n", "round 3"));
  CHECK_THROWS_AS(parse_transcript("1 0 1 G\n"), Error);
  CHECK_THROWS_AS(parse_transcript("1 0 x R\n"), Error);
  CHECK_THROWS_AS(parse_transcript("1 0 1\n"), Error);
}

TEST_CASE("transcript ids map to fresh endpoints") {
  ColoredGraph g;
  CHECK(move_from_ids(g, 0, 1) == Move{kFresh, kFresh});
  g = g.with_edge(Move{kFresh, kFresh}, Color::Red);
  CHECK(move_from_ids(g, 1, 2) == Move{1, kFresh});
  CHECK(move_from_ids(g, 2, 3) == Move{kFresh, kFresh});
  CHECK(move_from_ids(g, 1, 0) == Move{0, 1});
  CHECK_THROWS_AS(move_from_ids(g, 1, 3), Error);
  CHECK_THROWS_AS(move_from_ids(g, 1, 1), Error);
}
