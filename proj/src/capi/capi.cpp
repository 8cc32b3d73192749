#include "ramsey/ramsey.h"

#include <cstring>
#include <new>
#include <sstream>
#include <string>

#include "ramsey/api.hpp"
#include "ramsey/catalog.hpp"
#include "ramsey/embed.hpp"
#include "ramsey/solver.hpp"
#include "ramsey/transcript.hpp"
#include "ramsey/verify.hpp"

struct rg_graph {
  ramsey::ColoredGraph g;
};

struct rg_target {
  ramsey::Target t;
};

struct rg_strategy {
  ramsey::StrategyFile file;
};

struct rg_service {
  std::shared_ptr<ramsey::SessionManager> sessions;
  std::shared_ptr<ramsey::ApiRouter> router;
  std::unique_ptr<ramsey::HttpServer> server;
};

namespace {

thread_local std::string last_error;

rg_status status_of(ramsey::ErrorCode code) {
  using ramsey::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument:
      return RG_ERR_INVALID_ARGUMENT;
    case ErrorCode::DuplicateEdge:
      return RG_ERR_DUPLICATE_EDGE;
    case ErrorCode::SelfLoop:
      return RG_ERR_SELF_LOOP;
    case ErrorCode::Capacity:
      return RG_ERR_CAPACITY;
    case ErrorCode::InvalidVertex:
      return RG_ERR_INVALID_VERTEX;
    case ErrorCode::Parse:
      return RG_ERR_PARSE;
    case ErrorCode::StateAlreadyWon:
      return RG_ERR_STATE_ALREADY_WON;
    case ErrorCode::NoStrategy:
      return RG_ERR_NO_STRATEGY;
    case ErrorCode::MissingPattern:
      return RG_ERR_MISSING_PATTERN;
    case ErrorCode::MalformedLeaf:
      return RG_ERR_MALFORMED_LEAF;
    case ErrorCode::Semantic:
      return RG_ERR_SEMANTIC;
    case ErrorCode::Io:
      return RG_ERR_IO;
    case ErrorCode::Aborted:
      return RG_ERR_ABORTED;
  }
  return RG_ERR_INTERNAL;
}

rg_status fail(rg_status status, const std::string& message) {
  last_error = message;
  return status;
}

template <class F>
rg_status guarded(F&& f) {
  try {
    last_error.clear();
    return f();
  } catch (const ramsey::Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(RG_ERR_CAPACITY, "out of memory");
  } catch (const std::exception& e) {
    return fail(RG_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(RG_ERR_INTERNAL, "unknown failure");
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

ramsey::Color color_arg(char c) {
  auto color = ramsey::color_from_char(c);
  if (!color) throw ramsey::Error(ramsey::ErrorCode::InvalidArgument, "color must be 'R' or 'B'");
  return *color;
}

ramsey::SolveOptions options_arg(const rg_solve_options* o) {
  ramsey::SolveOptions opts;
  if (!o) return opts;
  opts.use_transposition = o->use_transposition != 0;
  opts.allow_fresh_fresh = o->allow_fresh_fresh != 0;
  opts.deficit_pruning = o->deficit_pruning != 0;
  opts.threads = o->threads < 1 ? 1 : o->threads;
  opts.node_limit = o->node_limit;
  return opts;
}

// RG_FRESH, or an id past the board, names a new vertex.
ramsey::Move move_arg(const ramsey::ColoredGraph& g, int u, int v) {
  const int n = g.vertex_count();
  if (u == RG_FRESH && v == RG_FRESH) return ramsey::Move{ramsey::kFresh, ramsey::kFresh};
  if (u == RG_FRESH) std::swap(u, v);
  if (v == RG_FRESH) v = u >= n ? n + (u == n ? 1 : 0) : n;
  return ramsey::move_from_ids(g, u, v);
}

void fill_stats(rg_solve_result* out, const ramsey::SolveStats& s) {
  out->nodes = s.nodes;
  out->table_hits = s.table_hits;
  out->table_entries = s.table_entries;
  out->seconds = s.seconds;
}

#define RG_REQUIRE(cond, what) \
  if (!(cond)) return fail(RG_ERR_INVALID_ARGUMENT, what)

}  // namespace

extern "C" {

const char* rg_version(void) { return "1.0.0"; }

const char* rg_status_name(rg_status status) {
  switch (status) {
    case RG_OK:
      return "ok";
    case RG_ERR_INVALID_ARGUMENT:
      return "invalid_argument";
    case RG_ERR_DUPLICATE_EDGE:
      return "duplicate_edge";
    case RG_ERR_SELF_LOOP:
      return "self_loop";
    case RG_ERR_CAPACITY:
      return "capacity";
    case RG_ERR_INVALID_VERTEX:
      return "invalid_vertex";
    case RG_ERR_PARSE:
      return "parse";
    case RG_ERR_STATE_ALREADY_WON:
      return "state_already_won";
    case RG_ERR_NO_STRATEGY:
      return "no_strategy";
    case RG_ERR_MISSING_PATTERN:
      return "missing_pattern";
    case RG_ERR_MALFORMED_LEAF:
      return "malformed_leaf";
    case RG_ERR_SEMANTIC:
      return "semantic";
    case RG_ERR_IO:
      return "io";
    case RG_ERR_ABORTED:
      return "aborted";
    case RG_ERR_NOT_FOUND:
      return "not_found";
    case RG_ERR_INTERNAL:
      return "internal";
  }
  return "unknown";
}

const char* rg_last_error(void) { return last_error.c_str(); }

void rg_string_free(char* s) { std::free(s); }

rg_status rg_graph_new(rg_graph** out) {
  RG_REQUIRE(out, "out is null");
  return guarded([&] {
    *out = new rg_graph{};
    return RG_OK;
  });
}

rg_status rg_graph_from_text(const char* text, rg_graph** out) {
  RG_REQUIRE(text && out, "null argument");
  return guarded([&] {
    *out = new rg_graph{ramsey::graph_from_text(text)};
    return RG_OK;
  });
}

rg_status rg_graph_to_text(const rg_graph* g, char** out) {
  RG_REQUIRE(g && out, "null argument");
  return guarded([&] {
    *out = dup_string(ramsey::to_text(g->g));
    return RG_OK;
  });
}

rg_status rg_graph_copy(const rg_graph* g, rg_graph** out) {
  RG_REQUIRE(g && out, "null argument");
  return guarded([&] {
    *out = new rg_graph{g->g};
    return RG_OK;
  });
}

void rg_graph_free(rg_graph* g) { delete g; }

int rg_graph_vertex_count(const rg_graph* g) { return g ? g->g.vertex_count() : 0; }
int rg_graph_edge_count(const rg_graph* g) { return g ? g->g.edge_count() : 0; }

rg_status rg_graph_add_edge(rg_graph* g, int u, int v, char color, int* out_u, int* out_v) {
  RG_REQUIRE(g, "graph is null");
  return guarded([&] {
    const ramsey::Color c = color_arg(color);
    const ramsey::Move m = move_arg(g->g, u, v);
    auto [ru, rv] = g->g.resolve(m);
    g->g = g->g.with_edge(m, c);
    if (out_u) *out_u = ru;
    if (out_v) *out_v = rv;
    return RG_OK;
  });
}

char rg_graph_edge_color(const rg_graph* g, int u, int v) {
  if (!g || u < 0 || v < 0 || u >= g->g.vertex_count() || v >= g->g.vertex_count()) return 0;
  auto c = g->g.color(u, v);
  return c ? ramsey::to_char(*c) : 0;
}

rg_status rg_graph_canonical_key(const rg_graph* g, char** out) {
  RG_REQUIRE(g && out, "null argument");
  return guarded([&] {
    *out = dup_string(ramsey::canonical_key(g->g).hex());
    return RG_OK;
  });
}

rg_status rg_target_parse(const char* spec, rg_target** out) {
  RG_REQUIRE(spec && out, "null argument");
  return guarded([&] {
    *out = new rg_target{ramsey::Target::parse(spec)};
    return RG_OK;
  });
}

void rg_target_free(rg_target* t) { delete t; }

const char* rg_target_spec(const rg_target* t) { return t ? t->t.spec().c_str() : ""; }

rg_status rg_contains_mono(const rg_graph* g, const rg_target* t, char color, int* out) {
  RG_REQUIRE(g && t && out, "null argument");
  return guarded([&] {
    *out = ramsey::contains_mono(g->g, t->t, color_arg(color)) ? 1 : 0;
    return RG_OK;
  });
}

rg_status rg_forcing(const rg_graph* g, const rg_target* red, const rg_target* blue, int u, int v, int* forces_red,
                     int* forces_blue) {
  RG_REQUIRE(g && red && blue && forces_red && forces_blue, "null argument");
  return guarded([&] {
    ramsey::GameState s(red->t, blue->t, g->g);
    const ramsey::Move m = move_arg(g->g, u, v);
    *forces_red = ramsey::forces_red(s, m) ? 1 : 0;
    *forces_blue = ramsey::forces_blue(s, m) ? 1 : 0;
    return RG_OK;
  });
}

void rg_solve_options_default(rg_solve_options* options) {
  if (!options) return;
  options->use_transposition = 1;
  options->allow_fresh_fresh = 1;
  options->deficit_pruning = 1;
  options->threads = 1;
  options->node_limit = 0;
}

rg_status rg_solve(const rg_target* red, const rg_target* blue, const rg_graph* start, int cap,
                   const rg_solve_options* options, rg_solve_result* out, char** pv) {
  RG_REQUIRE(red && blue && out, "null argument");
  RG_REQUIRE(cap >= 0, "cap must be non-negative");
  return guarded([&] {
    ramsey::Solver solver(red->t, blue->t, options_arg(options));
    const ramsey::ColoredGraph board = start ? start->g : ramsey::ColoredGraph{};
    auto outcome = solver.value(board, cap, pv != nullptr);
    out->builder_wins = outcome.builder_wins() ? 1 : 0;
    out->rounds = outcome.rounds;
    out->exact = outcome.exact ? 1 : 0;
    fill_stats(out, outcome.stats);
    if (pv) {
      ramsey::Transcript t;
      t.set("targets", "RED=" + red->t.spec() + " BLUE=" + blue->t.spec());
      int round = board.edge_count();
      for (const auto& e : outcome.principal_variation) {
        t.moves.push_back({++round, std::min(e.u, e.v), std::max(e.u, e.v), e.color});
      }
      *pv = dup_string(ramsey::to_text(t));
    }
    return RG_OK;
  });
}

rg_status rg_painter_survival(const rg_target* red, const rg_target* blue, int rounds, const rg_solve_options* options,
                              int* survives, rg_solve_result* stats) {
  RG_REQUIRE(red && blue && survives, "null argument");
  return guarded([&] {
    auto result = ramsey::painter_survival(red->t, blue->t, rounds, options_arg(options));
    *survives = result.survives ? 1 : 0;
    if (stats) {
      stats->builder_wins = result.survives ? 0 : 1;
      stats->rounds = rounds;
      stats->exact = 1;
      fill_stats(stats, result.stats);
    }
    return RG_OK;
  });
}

rg_status rg_extract_strategy(const rg_target* red, const rg_target* blue, int rounds, const rg_solve_options* options,
                              char** out) {
  RG_REQUIRE(red && blue && out, "null argument");
  return guarded([&] {
    auto file = ramsey::extract_builder_strategy(red->t, blue->t, rounds, options_arg(options));
    *out = dup_string(ramsey::to_text(file));
    return RG_OK;
  });
}

rg_status rg_strategy_parse(const char* text, rg_strategy** out) {
  RG_REQUIRE(text && out, "null argument");
  return guarded([&] {
    *out = new rg_strategy{ramsey::parse_strategy(text)};
    return RG_OK;
  });
}

rg_status rg_strategy_bundled(rg_strategy** out) {
  RG_REQUIRE(out, "null argument");
  return guarded([&] {
    *out = new rg_strategy{ramsey::parse_strategy(ramsey::bundled_c4p6_strategy())};
    return RG_OK;
  });
}

void rg_strategy_free(rg_strategy* s) { delete s; }

rg_status rg_strategy_to_text(const rg_strategy* s, char** out) {
  RG_REQUIRE(s && out, "null argument");
  return guarded([&] {
    *out = dup_string(ramsey::to_text(s->file));
    return RG_OK;
  });
}

rg_status rg_strategy_verify(const rg_strategy* s, rg_verify_result* out, char** report) {
  RG_REQUIRE(s && out, "null argument");
  return guarded([&] {
    auto r = ramsey::verify(s->file);
    out->pass = r.pass ? 1 : 0;
    out->budget = r.budget;
    out->max_rounds = r.max_rounds;
    out->branches = r.branches;
    out->failures = static_cast<int>(r.failures.size());
    if (report) *report = dup_string(ramsey::format_report(r));
    return RG_OK;
  });
}

rg_status rg_bounds_table(char** out) {
  RG_REQUIRE(out, "null argument");
  return guarded([&] {
    *out = dup_string(ramsey::BoundsCatalog::bundled().describe());
    return RG_OK;
  });
}

rg_status rg_bounds_lookup(const rg_target* red, const rg_target* blue, int* found, int* lower, int* upper,
                           char** source) {
  RG_REQUIRE(red && blue && found && lower && upper, "null argument");
  return guarded([&] {
    auto v = ramsey::BoundsCatalog::bundled().lookup(red->t, blue->t);
    *found = v ? 1 : 0;
    *lower = v ? v->lower : 0;
    *upper = v ? v->upper : 0;
    if (source) {
      std::string s;
      if (v) {
        s = v->source;
        for (const auto& f : v->flags) s += "," + f;
      }
      *source = dup_string(s);
    }
    return RG_OK;
  });
}

rg_status rg_bounds_c4_path(int k, int* lower, int* upper) {
  RG_REQUIRE(lower && upper, "null argument");
  return guarded([&] {
    auto [lo, hi] = ramsey::c4_path_bounds(k);
    *lower = lo;
    *upper = hi;
    return RG_OK;
  });
}

rg_status rg_replay(const char* transcript, const rg_target* red, const rg_target* blue, int* rounds, char* completed,
                    char** report) {
  RG_REQUIRE(transcript && rounds && completed, "null argument");
  RG_REQUIRE((red == nullptr) == (blue == nullptr), "give both targets or neither");
  return guarded([&] {
    auto t = ramsey::parse_transcript(transcript);
    std::optional<std::pair<ramsey::Target, ramsey::Target>> targets;
    if (red) {
      targets.emplace(red->t, blue->t);
    } else {
      targets = ramsey::transcript_targets(t);
    }
    if (!targets) throw ramsey::Error(ramsey::ErrorCode::InvalidArgument, "no targets given and no `# targets` header");
    auto state = ramsey::replay(t, targets->first, targets->second);
    *rounds = state.rounds_played();
    *completed = state.completed() ? ramsey::to_char(*state.completed()) : 0;
    if (report) {
      std::ostringstream os;
      os << "targets RED=" << targets->first.spec() << " BLUE=" << targets->second.spec() << '\n';
      ramsey::ColoredGraph g;
      for (const auto& m : t.moves) {
        auto move = ramsey::move_from_ids(g, m.u, m.v);
        auto [u, v] = g.resolve(move);
        g = g.with_edge(move, m.color);
        os << "round " << m.round << ": " << ramsey::display_name(u) << ' ' << ramsey::display_name(v) << ' '
           << ramsey::to_char(m.color) << '\n';
      }
      if (state.completed()) {
        os << (*state.completed() == ramsey::Color::Red ? "red " + targets->first.spec()
                                                         : "blue " + targets->second.spec())
           << " completed after " << state.rounds_played() << " rounds\n";
      } else {
        os << "no target completed after " << state.rounds_played() << " rounds\n";
      }
      *report = dup_string(os.str());
    }
    return RG_OK;
  });
}

rg_status rg_service_new(const char* persist_dir, int max_cap, rg_service** out) {
  RG_REQUIRE(out, "null argument");
  RG_REQUIRE(max_cap >= 1 && max_cap <= 16, "max_cap must be between 1 and 16");
  return guarded([&] {
    ramsey::ServiceOptions opts;
    opts.max_cap = max_cap;
    if (persist_dir && *persist_dir) opts.persist_dir = persist_dir;
    auto svc = std::make_unique<rg_service>();
    svc->sessions = std::make_shared<ramsey::SessionManager>(opts);
    svc->router = std::make_shared<ramsey::ApiRouter>(svc->sessions);
    svc->server = std::make_unique<ramsey::HttpServer>(svc->router);
    *out = svc.release();
    return RG_OK;
  });
}

void rg_service_free(rg_service* s) {
  if (!s) return;
  s->server->stop();
  delete s;
}

rg_status rg_service_handle(rg_service* s, const char* method, const char* path, const char* body, int* http_status,
                            char** response) {
  RG_REQUIRE(s && method && path && http_status && response, "null argument");
  return guarded([&] {
    auto r = s->router->handle(method, path, body ? body : "");
    *http_status = r.status;
    *response = dup_string(r.body);
    return RG_OK;
  });
}

rg_status rg_service_listen(rg_service* s, const char* host, int port) {
  RG_REQUIRE(s && host, "null argument");
  return guarded([&] {
    if (!s->server->listen(host, port)) {
      return fail(RG_ERR_IO, "cannot listen on " + std::string(host) + ":" + std::to_string(port));
    }
    return RG_OK;
  });
}

int rg_service_port(const rg_service* s) { return s ? s->server->port() : 0; }

void rg_service_stop(rg_service* s) {
  if (s) s->server->stop();
}

}  // extern "C"
