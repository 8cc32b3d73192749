#include "ramsey/api.hpp"

#include <httplib.h>

#include <json.hpp>

#include "ramsey/catalog.hpp"

namespace ramsey {

namespace {

using nlohmann::json;

json error_body(const std::string& code, const std::string& message) {
  return json{{"code", code}, {"message", message}};
}

int http_status(ServiceError e) {
  switch (e) {
    case ServiceError::UnknownSession:
      return 404;
    case ServiceError::OutOfTurn:
      return 409;
    case ServiceError::IllegalMove:
      return 422;
    case ServiceError::Validation:
      return 400;
    case ServiceError::Capacity:
      return 503;
  }
  return 400;
}

json session_json(const SessionView& s) {
  const ColoredGraph& board = s.state.board();
  json names = json::array();
  for (int v = 0; v < board.vertex_count(); ++v) names.push_back(display_name(v));
  json edges = json::array();
  for (const auto& m : s.transcript.moves) {
    edges.push_back({{"u", m.u}, {"v", m.v}, {"color", std::string(1, to_char(m.color))}, {"round", m.round}});
  }
  json out{{"id", s.id},
           {"red", s.config.red.spec()},
           {"blue", s.config.blue.spec()},
           {"human_role", to_string(s.config.human)},
           {"policy", to_string(s.config.policy)},
           {"cap", s.config.cap},
           {"round", s.state.rounds_played()},
           {"status", to_string(s.status)},
           {"winner", to_string(s.winner)},
           {"vertices", board.vertex_count()},
           {"names", names},
           {"edges", edges},
           {"engine_note", s.engine_note}};
  if (s.state.completed()) {
    out["completed"] = std::string(1, to_char(*s.state.completed()));
  } else {
    out["completed"] = nullptr;
  }
  if (s.pending) {
    json losing = json::array();
    if (s.pending->forces_blue) losing.push_back("R");
    if (s.pending->forces_red) losing.push_back("B");
    out["pending"] = {{"edge", {s.pending->u, s.pending->v}},
                      {"forces_red", s.pending->forces_red},
                      {"forces_blue", s.pending->forces_blue},
                      {"double_forced", s.pending->double_forced},
                      {"losing_colors", losing}};
  } else {
    out["pending"] = nullptr;
  }
  return out;
}

json bounds_json() {
  const auto& cat = BoundsCatalog::bundled();
  json rows = json::array();
  for (const auto& v : cat.values()) {
    rows.push_back({{"red", v.red},
                    {"blue", v.blue},
                    {"lower", v.lower},
                    {"upper", v.upper},
                    {"source", v.source},
                    {"flags", v.flags}});
  }
  json formulas = json::array();
  if (cat.has_formula("K2-Kk")) formulas.push_back({{"name", "K2-Kk"}, {"description", "r(K2,Kk) = C(k,2)"}});
  if (cat.has_formula("C4-Pk")) {
    json examples = json::array();
    for (int k = 6; k <= 10; ++k) {
      auto [lo, hi] = c4_path_bounds(k);
      examples.push_back({{"k", k}, {"lower", lo}, {"upper", hi}});
    }
    formulas.push_back({{"name", "C4-Pk"},
                        {"description", "2k-1 <= r(C4,Pk) <= 3k-5 for k in {6,7}; 2k-2 <= r(C4,Pk) <= 3k-5 for k >= 8"},
                        {"examples", examples}});
  }
  return json{{"values", rows}, {"formulas", formulas}};
}

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> parts;
  std::size_t i = 0;
  std::string clean = path.substr(0, path.find('?'));
  while (i < clean.size()) {
    std::size_t j = clean.find('/', i);
    if (j == std::string::npos) j = clean.size();
    if (j > i) parts.push_back(clean.substr(i, j - i));
    i = j + 1;
  }
  return parts;
}

SessionConfig parse_config(const json& body, int default_cap) {
  SessionConfig cfg;
  auto text = [&](const char* key, const std::string& fallback) {
    if (!body.contains(key)) return fallback;
    if (!body[key].is_string()) throw ServiceFailure(ServiceError::Validation, std::string(key) + " must be a string");
    return body[key].get<std::string>();
  };
  try {
    cfg.red = Target::parse(text("red", "C4"));
    cfg.blue = Target::parse(text("blue", "P6"));
  } catch (const Error& e) {
    throw ServiceFailure(ServiceError::Validation, e.what());
  }
  auto role = role_from_string(text("human_role", "painter"));
  if (!role) throw ServiceFailure(ServiceError::Validation, "human_role must be painter or builder");
  auto policy = policy_from_string(text("policy", "book_then_solver"));
  if (!policy) throw ServiceFailure(ServiceError::Validation, "policy must be book_then_solver or solver_only");
  cfg.human = *role;
  cfg.policy = *policy;
  cfg.cap = default_cap;
  if (body.contains("cap")) {
    if (!body["cap"].is_number_integer()) throw ServiceFailure(ServiceError::Validation, "cap must be an integer");
    cfg.cap = body["cap"].get<int>();
  }
  return cfg;
}

}  // namespace

ApiResponse ApiRouter::handle(const std::string& method, const std::string& path, const std::string& body) const {
  auto respond = [](int status, const json& j) { return ApiResponse{status, j.dump()}; };
  const auto parts = split_path(path);
  try {
    json request = json::object();
    if (method == "POST" && !body.empty()) {
      request = json::parse(body);
      if (!request.is_object()) return respond(400, error_body("bad_request", "body must be a JSON object"));
    }
    if (parts.size() == 2 && parts[0] == "catalog" && parts[1] == "bounds" && method == "GET") {
      return respond(200, bounds_json());
    }
    if (parts.empty() || parts[0] != "sessions") {
      return respond(404, error_body("not_found", "no route for " + method + " " + path));
    }
    if (parts.size() == 1 && method == "POST") {
      return respond(201, session_json(sessions_->create(parse_config(request, 11))));
    }
    if (parts.size() == 1 && method == "GET") {
      json ids = sessions_->ids();
      return respond(200, json{{"sessions", ids}});
    }
    if (parts.size() == 2 && method == "GET") return respond(200, session_json(sessions_->get(parts[1])));
    if (parts.size() == 3 && parts[2] == "hints" && method == "GET") {
      const auto view = sessions_->get(parts[1]);
      json hints = json::array();
      for (const auto& h : sessions_->hints(parts[1])) {
        hints.push_back({{"edge", {h.u, h.v}},
                         {"forces_red", h.forces_red},
                         {"forces_blue", h.forces_blue},
                         {"double_forced", h.double_forced}});
      }
      return respond(200, json{{"id", view.id}, {"round", view.state.rounds_played()}, {"hints", hints}});
    }
    if (parts.size() == 3 && parts[2] == "moves" && method == "POST") {
      if (request.contains("color")) {
        const auto& c = request["color"];
        auto color = c.is_string() && c.get<std::string>().size() == 1 ? color_from_char(c.get<std::string>()[0])
                                                                      : std::nullopt;
        if (!color) return respond(400, error_body("validation", "color must be \"R\" or \"B\""));
        return respond(200, session_json(sessions_->submit_color(parts[1], *color)));
      }
      if (request.contains("edge")) {
        const auto& e = request["edge"];
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
          return respond(400, error_body("validation", "edge must be two vertex ids"));
        }
        return respond(200, session_json(sessions_->submit_edge(parts[1], e[0].get<int>(), e[1].get<int>())));
      }
      return respond(400, error_body("validation", "a move needs either \"color\" or \"edge\""));
    }
    return respond(404, error_body("not_found", "no route for " + method + " " + path));
  } catch (const ServiceFailure& f) {
    return respond(http_status(f.code()), error_body(to_string(f.code()), f.what()));
  } catch (const json::exception& e) {
    return respond(400, error_body("bad_request", std::string("malformed JSON: ") + e.what()));
  } catch (const Error& e) {
    return respond(500, error_body("internal", e.what()));
  }
}

struct HttpServer::Impl {
  httplib::Server server;
};

HttpServer::HttpServer(std::shared_ptr<ApiRouter> router) : impl_(std::make_unique<Impl>()) {
  auto handler = [router](const httplib::Request& req, httplib::Response& res) {
    ApiResponse r = router->handle(req.method, req.path, req.body);
    res.status = r.status;
    res.set_content(r.body, "application/json");
    res.set_header("Access-Control-Allow-Origin", "*");
  };
  impl_->server.Get(".*", handler);
  impl_->server.Post(".*", handler);
  impl_->server.Options(".*", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.status = 204;
  });
}

HttpServer::~HttpServer() { stop(); }

bool HttpServer::listen(const std::string& host, int port) {
  int bound = port;
  if (port == 0) {
    bound = impl_->server.bind_to_any_port(host);
    if (bound < 0) return false;
  } else if (!impl_->server.bind_to_port(host, port)) {
    return false;
  }
  port_ = bound;
  return impl_->server.listen_after_bind();
}

bool HttpServer::running() const { return impl_->server.is_running(); }

void HttpServer::stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

}  // namespace ramsey
