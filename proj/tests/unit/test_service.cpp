#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "doctest.h"
#include "httplib.h"
#include "json.hpp"
#include "ramsey/api.hpp"
#include "ramsey/game.hpp"
#include "ramsey/session.hpp"
#include "ramsey/transcript.hpp"

using namespace ramsey;
using nlohmann::json;

namespace {

struct Api {
  std::shared_ptr<SessionManager> manager;
  ApiRouter router;

  explicit Api(ServiceOptions o = {}) : manager(std::make_shared<SessionManager>(o)), router(manager) {}

  std::pair<int, json> call(const std::string& method, const std::string& path, const json& body = json::object()) {
    const auto r = router.handle(method, path, body.dump());
    return {r.status, json::parse(r.body)};
  }

  json ok(const std::string& method, const std::string& path, const json& body = json::object()) {
    auto [status, j] = call(method, path, body);
    REQUIRE_MESSAGE(status == (method == "POST" && path == "/sessions" ? 201 : 200), j.dump());
    return j;
  }

  json create(const json& body) { return ok("POST", "/sessions", body); }
  json color(const std::string& id, const std::string& c) { return ok("POST", "/sessions/" + id + "/moves", {{"color", c}}); }
};

json painter_c4p6() {
  return {{"red", "C4"}, {"blue", "P6"}, {"human_role", "painter"}, {"policy", "book_then_solver"}, {"cap", 11}};
}

bool has_hint(const json& hints, int u, int v, const char* flag) {
  for (const auto& h : hints["hints"]) {
    if (h["edge"][0] == u && h["edge"][1] == v) return h[flag].get<bool>();
  }
  FAIL("no hint for the edge");
  return false;
}

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("ramsey_test_" + name + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("engine Builder opens with the first path edge") {
  Api api;
  const auto s = api.create(painter_c4p6());
  CHECK(s["status"] == "awaiting_human");
  CHECK(s["round"] == 0);
  CHECK(s["pending"]["edge"] == json::array({0, 1}));
  CHECK(s["winner"] == "none");
  CHECK(s["completed"].is_null());
}

TEST_CASE("human Builder session waits for an edge") {
  Api api;
  const auto s = api.create({{"red", "C4"}, {"blue", "P3"}, {"human_role", "builder"}, {"policy", "solver_only"}, {"cap", 8}});
  CHECK(s["status"] == "awaiting_human");
  CHECK(s["pending"].is_null());
  auto [status, err] = api.call("POST", "/sessions/" + s["id"].get<std::string>() + "/moves", {{"color", "R"}});
  CHECK(status == 409);
  CHECK(err["code"] == "out_of_turn");
}

TEST_CASE("create validation") {
  Api api;
  for (const json& body : {json{{"cap", 0}}, json{{"cap", 99}}, json{{"red", "Q7"}}, json{{"human_role", "referee"}},
                           json{{"red", "P40"}}, json{{"cap", "eleven"}}}) {
    auto [status, err] = api.call("POST", "/sessions", body);
    CHECK_MESSAGE(status == 400, body.dump());
    CHECK(err["code"] == "validation");
    CHECK(err["message"].is_string());
  }
  auto [status, err] = api.call("POST", "/sessions", json::array());
  CHECK(status == 400);
  CHECK(err["code"] == "bad_request");
}

TEST_CASE("capacity limit") {
  ServiceOptions o;
  o.max_sessions = 2;
  Api api(o);
  api.create(painter_c4p6());
  api.create(painter_c4p6());
  auto [status, err] = api.call("POST", "/sessions", painter_c4p6());
  CHECK(status == 503);
  CHECK(err["code"] == "capacity");
}

TEST_CASE("unknown session and route errors") {
  Api api;
  CHECK(api.call("GET", "/sessions/s999").first == 404);
  CHECK(api.call("GET", "/sessions/s999").second["code"] == "unknown_session");
  CHECK(api.call("GET", "/sessions/s999/hints").first == 404);
  CHECK(api.call("POST", "/sessions/s999/moves", {{"color", "R"}}).first == 404);
  CHECK(api.call("GET", "/nowhere").second["code"] == "not_found");
}

TEST_CASE("human Builder errors and engine Painter replies") {
  Api api;
  const auto s = api.create({{"red", "C4"}, {"blue", "P3"}, {"human_role", "builder"}, {"policy", "solver_only"}, {"cap", 8}});
  const std::string id = s["id"];
  auto after = api.ok("POST", "/sessions/" + id + "/moves", {{"edge", {0, 1}}});
  CHECK(after["round"] == 1);
  CHECK(after["edges"].size() == 1);
  auto [status, err] = api.call("POST", "/sessions/" + id + "/moves", {{"edge", {0, 1}}});
  CHECK(status == 422);
  CHECK(err["code"] == "illegal_move");
  CHECK(api.call("POST", "/sessions/" + id + "/moves", {{"edge", {0, 7}}}).first == 422);
  CHECK(api.call("POST", "/sessions/" + id + "/moves", {{"edge", {1, 1}}}).first == 422);
  CHECK(api.call("POST", "/sessions/" + id + "/moves", {{"edge", "x"}}).first == 400);
  // Painter survives five rounds of (C4, P3); the engine should not lose sooner.
  json state = after;
  std::vector<std::pair<int, int>> line{{1, 2}, {0, 2}, {2, 3}, {1, 3}, {0, 3}, {3, 4}, {2, 4}};
  for (auto [u, v] : line) {
    if (state["status"] == "finished") break;
    auto [st, next] = api.call("POST", "/sessions/" + id + "/moves", {{"edge", {u, v}}});
    if (st != 200) break;
    state = next;
  }
  if (state["status"] == "finished" && state["winner"] == "builder") CHECK(state["round"].get<int>() >= 6);
}

TEST_CASE("hints flag forcing moves") {
  Api api;
  const auto fresh = api.create(painter_c4p6());
  const std::string id = fresh["id"];
  auto h0 = api.ok("GET", "/sessions/" + id + "/hints");
  for (const auto& h : h0["hints"]) {
    CHECK_FALSE(h["forces_red"].get<bool>());
    CHECK_FALSE(h["forces_blue"].get<bool>());
    CHECK_FALSE(h["double_forced"].get<bool>());
  }
  // Opening RRBRR selects case R3; blue sixth, seventh and eighth edges lead to R3(a).
  for (const char* c : {"R", "R", "B", "R", "R", "B", "B"}) api.color(id, c);
  auto s = api.color(id, "B");
  CHECK(s["round"] == 8);
  const int C = 2, E = 4;
  auto h = api.ok("GET", "/sessions/" + id + "/hints");
  CHECK(has_hint(h, C, E, "forces_red"));
  CHECK(s["pending"]["edge"] == json::array({C, E}));
  CHECK(s["pending"]["forces_red"] == true);

  const auto other = api.create(painter_c4p6());
  const std::string id2 = other["id"];
  // R3(b): blue, blue, red, then the forced blue ninth edge.
  for (const char* c : {"R", "R", "B", "R", "R", "B", "B", "R"}) api.color(id2, c);
  auto s2 = api.color(id2, "B");
  CHECK(s2["round"] == 9);
  auto h2 = api.ok("GET", "/sessions/" + id2 + "/hints");
  CHECK(has_hint(h2, C, E, "double_forced"));
  CHECK(s2["pending"]["double_forced"] == true);
  CHECK(s2["pending"]["losing_colors"].size() == 2);
  auto end = api.color(id2, "R");
  CHECK(end["status"] == "finished");
  CHECK(end["winner"] == "builder");
  CHECK(end["round"] == 10);
  CHECK(end["completed"] == "R");
  auto [status, err] = api.call("POST", "/sessions/" + id2 + "/moves", {{"color", "B"}});
  CHECK(status == 409);
}

TEST_CASE("every Painter reply sequence against the book ends in a Builder win within 11 rounds") {
  ServiceOptions o;
  o.max_sessions = 100000;
  Api api(o);
  int games = 0;
  int longest = 0;
  std::function<void(const std::vector<std::string>&)> explore = [&](const std::vector<std::string>& prefix) {
    for (const char* c : {"B", "R"}) {
      const auto s = api.create(painter_c4p6());
      const std::string id = s["id"];
      json state = s;
      for (const auto& p : prefix) state = api.color(id, p);
      state = api.color(id, c);
      auto line = prefix;
      line.push_back(c);
      if (state["status"] == "finished") {
        ++games;
        CHECK(state["winner"] == "builder");
        CHECK(state["round"].get<int>() <= 11);
        longest = std::max(longest, state["round"].get<int>());
        const auto view = api.manager->get(id);
        const auto replayed = replay(view.transcript, Target::cycle(4), Target::path(6));
        CHECK(replayed.terminal());
        CHECK(replayed.board() == view.state.board());
      } else {
        REQUIRE(state["status"] == "awaiting_human");
        REQUIRE(line.size() < 11);
        CHECK(state["engine_note"].get<std::string>().find("book") != std::string::npos);
        explore(line);
      }
    }
  };
  explore({});
  CHECK(games == 360);
  CHECK(longest == 11);
}

TEST_CASE("sessions are isolated under interleaving") {
  Api api;
  const std::string a = api.create(painter_c4p6())["id"];
  const std::string b = api.create(painter_c4p6())["id"];
  std::thread ta([&] {
    for (int i = 0; i < 5; ++i) api.router.handle("POST", "/sessions/" + a + "/moves", R"({"color":"B"})");
  });
  std::thread tb([&] {
    for (int i = 0; i < 4; ++i) api.router.handle("POST", "/sessions/" + b + "/moves", R"({"color":"R"})");
  });
  ta.join();
  tb.join();
  auto sa = api.ok("GET", "/sessions/" + a);
  auto sb = api.ok("GET", "/sessions/" + b);
  CHECK(sa["status"] == "finished");
  CHECK(sa["completed"] == "B");
  CHECK(sa["round"] == 5);
  CHECK(sb["round"] == 4);
  for (const auto& e : sb["edges"]) CHECK(e["color"] == "R");
}

TEST_CASE("persisted sessions survive a restart") {
  const auto dir = scratch_dir("persist");
  ServiceOptions o;
  o.persist_dir = dir;
  std::string id;
  json before;
  {
    Api api(o);
    id = api.create(painter_c4p6())["id"];
    for (const char* c : {"R", "B", "B"}) before = api.color(id, c);
    api.create({{"red", "C4"}, {"blue", "P3"}, {"human_role", "builder"}, {"policy", "solver_only"}, {"cap", 8}});
  }
  CHECK(std::filesystem::exists(dir / (id + ".transcript")));
  Api again(o);
  CHECK(again.manager->ids().size() == 2);
  auto after = again.ok("GET", "/sessions/" + id);
  CHECK(after["edges"] == before["edges"]);
  CHECK(after["pending"] == before["pending"]);
  CHECK(after["status"] == before["status"]);
  const std::string next = again.create(painter_c4p6())["id"];
  CHECK(next != id);
  std::filesystem::remove_all(dir);
}

TEST_CASE("bounds catalog endpoint") {
  Api api;
  auto j = api.ok("GET", "/catalog/bounds");
  bool found = false;
  for (const auto& v : j["values"]) {
    if (v["red"] == "C4" && v["blue"] == "P6") {
      found = true;
      CHECK(v["lower"] == 11);
      CHECK(v["upper"] == 11);
    }
  }
  CHECK(found);
  CHECK(j["formulas"].size() == 2);
}

TEST_CASE("HTTP server round trip") {
  auto router = std::make_shared<ApiRouter>(std::make_shared<SessionManager>());
  HttpServer server(router);
  std::thread t([&] { server.listen("127.0.0.1", 0); });
  for (int i = 0; i < 200 && server.port() == 0; ++i) std::this_thread::sleep_for(std::chrono::milliseconds(10));
  REQUIRE(server.port() != 0);
  httplib::Client client("127.0.0.1", server.port());
  auto created = client.Post("/sessions", painter_c4p6().dump(), "application/json");
  REQUIRE(created);
  CHECK(created->status == 201);
  const std::string id = json::parse(created->body)["id"];
  auto moved = client.Post("/sessions/" + id + "/moves", R"({"color":"R"})", "application/json");
  REQUIRE(moved);
  CHECK(json::parse(moved->body)["round"] == 1);
  auto missing = client.Get("/sessions/nope");
  REQUIRE(missing);
  CHECK(missing->status == 404);
  CHECK(json::parse(missing->body)["code"] == "unknown_session");
  auto listed = client.Get("/sessions");
  REQUIRE(listed);
  CHECK(json::parse(listed->body)["sessions"].size() == 1);
  server.stop();
  t.join();
}

TEST_CASE("responses match the shipped API schema") {
  std::ifstream in(std::string(RAMSEY_SOURCE_DIR) + "/docs/api-schema.json");
  REQUIRE(in);
  const json schema = json::parse(in);
  const auto& defs = schema["$defs"];
  auto conforms = [&](const json& value, const std::string& def) {
    const auto& d = defs[def];
    for (const auto& key : d["required"]) {
      if (!value.contains(key.get<std::string>())) {
        MESSAGE(def << " lacks " << key);
        return false;
      }
    }
    for (const auto& [key, _] : value.items()) {
      if (!d["properties"].contains(key)) {
        MESSAGE(def << " has undocumented " << key);
        return false;
      }
    }
    return true;
  };
  Api api;
  const auto s = api.create(painter_c4p6());
  const std::string id = s["id"];
  CHECK(conforms(s, "Session"));
  CHECK(conforms(s["pending"], "Pending"));
  const auto moved = api.color(id, "R");
  CHECK(conforms(moved, "Session"));
  CHECK(conforms(moved["edges"][0], "PlayedEdge"));
  const auto hints = api.ok("GET", "/sessions/" + id + "/hints");
  CHECK(conforms(hints, "Hints"));
  CHECK(conforms(hints["hints"][0], "Hint"));
  const auto bounds = api.ok("GET", "/catalog/bounds");
  CHECK(conforms(bounds, "Bounds"));
  CHECK(conforms(api.ok("GET", "/sessions"), "SessionList"));
  const auto err = api.call("GET", "/sessions/none").second;
  CHECK(conforms(err, "Error"));
  CHECK(schema["errors"].contains(err["code"].get<std::string>()));
  CHECK(schema["errors"][err["code"].get<std::string>()] == 404);
}
