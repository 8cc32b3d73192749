#include "doctest.h"
#include "ramsey/game.hpp"

using namespace ramsey;

namespace {

// Vertices A..F are 0..5; G is the next fresh vertex.
GameState r3_position(std::initializer_list<std::tuple<int, int, Color>> moves) {
  GameState s(Target::cycle(4), Target::path(6));
  for (auto [u, v, c] : moves) s = s.play(Move{u, v}, c);
  return s;
}

constexpr int A = 0, B = 1, C = 2, D = 3, E = 4, F = 5;
constexpr Color R = Color::Red;
constexpr Color Bl = Color::Blue;

}  // namespace

TEST_CASE("play detects completion and refuses terminal states") {
  GameState s(Target::path(2), Target::path(3));
  s = s.play(Move{kFresh, kFresh}, Color::Blue);
  CHECK_FALSE(s.terminal());
  auto t = s.play(Move{1, kFresh}, Color::Blue);
  CHECK(t.completed() == Color::Blue);
  CHECK_THROWS_AS(t.play(Move{0, 2}, Color::Red), Error);
  auto r = s.play(Move{1, kFresh}, Color::Red);
  CHECK(r.completed() == Color::Red);
}

TEST_CASE("forcing on the R3 line") {
  GameState s(Target::cycle(4), Target::path(6));
  s = s.play(Move{kFresh, kFresh}, R);
  for (int v = 1; v < 5; ++v) s = s.play(Move{v, kFresh}, v == 2 ? Bl : R);
  // Path A-B-C-D-E-F colored RRBRR.
  CHECK(s.board().color(C, D) == Bl);
  s = s.play(Move{A, F}, Bl);
  s = s.play(Move{A, E}, Bl);
  s = s.play(Move{B, F}, Bl);
  CHECK(forces_red(s, Move{C, E}));
  CHECK_FALSE(forces_blue(s, Move{C, E}));
  s = s.play(Move{C, E}, R);
  CHECK(double_forced(s, Move{B, D}));
  CHECK(forces_red(s, Move{B, D}));
  CHECK(forces_blue(s, Move{B, D}));
  CHECK_FALSE(double_forced(s, Move{A, C}));
}

TEST_CASE("legal move orbits") {
  GameState s(Target::cycle(4), Target::path(6));
  auto empty = legal_move_orbits(s);
  REQUIRE(empty.size() == 1);
  CHECK(empty[0].representative.fresh_count() == 2);
  s = s.play(Move{kFresh, kFresh}, R);
  CHECK(legal_move_orbits(s).size() == 2);
  auto pos = r3_position({});
  CHECK(pos.rounds_played() == 0);
}
