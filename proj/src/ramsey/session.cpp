#include "ramsey/session.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "ramsey/embed.hpp"

namespace ramsey {

struct SessionManager::Session {
  std::string id;
  SessionConfig config;
  GameState state;
  Transcript transcript;
  std::optional<PendingEdge> pending;
  Status status = Status::AwaitingHuman;
  Winner winner = Winner::None;
  std::string engine_note;
  std::shared_ptr<Solver> solver;
  mutable std::mutex mutex;

  Session(std::string session_id, SessionConfig cfg, std::uint64_t node_limit)
      : id(std::move(session_id)), config(std::move(cfg)), state(config.red, config.blue) {
    SolveOptions opts;
    opts.node_limit = node_limit;
    opts.table_limit = std::size_t{1} << 20;
    solver = std::make_shared<Solver>(config.red, config.blue, opts);
  }
};

std::string to_string(Role r) { return r == Role::Painter ? "painter" : "builder"; }
std::string to_string(Policy p) { return p == Policy::BookThenSolver ? "book_then_solver" : "solver_only"; }

std::string to_string(Status s) {
  switch (s) {
    case Status::AwaitingHuman:
      return "awaiting_human";
    case Status::AwaitingEngine:
      return "awaiting_engine";
    case Status::Finished:
      return "finished";
  }
  return "finished";
}

std::string to_string(Winner w) {
  switch (w) {
    case Winner::None:
      return "none";
    case Winner::Builder:
      return "builder";
    case Winner::Painter:
      return "painter";
  }
  return "none";
}

std::string to_string(ServiceError e) {
  switch (e) {
    case ServiceError::UnknownSession:
      return "unknown_session";
    case ServiceError::OutOfTurn:
      return "out_of_turn";
    case ServiceError::IllegalMove:
      return "illegal_move";
    case ServiceError::Validation:
      return "validation";
    case ServiceError::Capacity:
      return "capacity";
  }
  return "validation";
}

std::optional<Role> role_from_string(std::string_view s) {
  if (s == "painter") return Role::Painter;
  if (s == "builder") return Role::Builder;
  return std::nullopt;
}

std::optional<Policy> policy_from_string(std::string_view s) {
  if (s == "book_then_solver") return Policy::BookThenSolver;
  if (s == "solver_only") return Policy::SolverOnly;
  return std::nullopt;
}

namespace {

PendingEdge describe_pending(const GameState& s, const Move& m) {
  PendingEdge p;
  p.move = m;
  std::tie(p.u, p.v) = s.board().resolve(m);
  p.forces_red = forces_red(s, m);
  p.forces_blue = forces_blue(s, m);
  p.double_forced = p.forces_red && p.forces_blue;
  return p;
}

// Painter's fallback when search runs out of budget: avoid completing a
// target, then prefer the color that leaves its target furthest away.
Color heuristic_color(const GameState& s, const Move& m) {
  Color best = Color::Red;
  int best_score = -1;
  for (Color c : kColors) {
    ColoredGraph child = s.board().with_edge(m, c);
    int score = 0;
    if (!contains_mono(child, s.target(c), c)) {
      score = 1 + completion_deficit(child, s.target(c), c);
    }
    if (score > best_score) {
      best_score = score;
      best = c;
    }
  }
  return best;
}

// Builder's fallback: a double-forced move, else a forcing move, else the
// first orbit representative.
Move heuristic_move(const GameState& s) {
  auto orbits = legal_move_orbits(s);
  for (const auto& o : orbits) {
    if (double_forced(s, o.representative)) return o.representative;
  }
  for (const auto& o : orbits) {
    if (forces_red(s, o.representative) || forces_blue(s, o.representative)) return o.representative;
  }
  return orbits.front().representative;
}

}  // namespace

SessionManager::SessionManager(ServiceOptions options) : options_(std::move(options)) {
  if (options_.persist_dir) {
    std::filesystem::create_directories(*options_.persist_dir);
    recover();
  }
}

SessionManager::~SessionManager() = default;

SessionView SessionManager::view(const Session& s) {
  SessionView v;
  v.id = s.id;
  v.config = s.config;
  v.state = s.state;
  v.transcript = s.transcript;
  v.pending = s.pending;
  v.status = s.status;
  v.winner = s.winner;
  v.engine_note = s.engine_note;
  return v;
}

std::shared_ptr<SessionManager::Session> SessionManager::find(const std::string& id) const {
  std::shared_lock lock(registry_mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw ServiceFailure(ServiceError::UnknownSession, "no session `" + id + "`");
  return it->second;
}

std::vector<std::string> SessionManager::ids() const {
  std::shared_lock lock(registry_mutex_);
  std::vector<std::string> out;
  for (const auto& [id, s] : sessions_) out.push_back(id);
  return out;
}

SessionView SessionManager::create(const SessionConfig& config) {
  if (config.cap < 1 || config.cap > options_.max_cap) {
    throw ServiceFailure(ServiceError::Validation,
                         "cap must be between 1 and " + std::to_string(options_.max_cap));
  }
  if (config.red.vertex_count() > 12 || config.blue.vertex_count() > 12) {
    throw ServiceFailure(ServiceError::Validation, "targets are limited to 12 vertices");
  }
  std::shared_ptr<Session> s;
  {
    std::unique_lock lock(registry_mutex_);
    if (sessions_.size() >= options_.max_sessions) {
      throw ServiceFailure(ServiceError::Capacity, "session limit of " + std::to_string(options_.max_sessions) +
                                                       " reached");
    }
    std::string id = "s" + std::to_string(next_id_++);
    s = std::make_shared<Session>(id, config, options_.engine_node_limit);
    sessions_[id] = s;
  }
  std::lock_guard lock(s->mutex);
  s->transcript.set("session", s->id);
  s->transcript.set("targets", "RED=" + config.red.spec() + " BLUE=" + config.blue.spec());
  s->transcript.set("human", to_string(config.human));
  s->transcript.set("policy", to_string(config.policy));
  s->transcript.set("cap", std::to_string(config.cap));
  persist_header(*s);
  if (config.human == Role::Painter) engine_turn(*s);
  return view(*s);
}

SessionView SessionManager::get(const std::string& id) const {
  auto s = find(id);
  std::lock_guard lock(s->mutex);
  return view(*s);
}

void SessionManager::apply(Session& s, const Move& m, Color c) {
  auto [u, v] = s.state.board().resolve(m);
  s.state = s.state.play(m, c);
  TranscriptMove tm{s.state.rounds_played(), std::min(u, v), std::max(u, v), c};
  s.transcript.moves.push_back(tm);
  persist_move(s, tm);
  finish_if_done(s);
}

void SessionManager::finish_if_done(Session& s) {
  if (s.state.terminal()) {
    s.status = Status::Finished;
    s.winner = Winner::Builder;
  } else if (s.state.rounds_played() >= s.config.cap) {
    s.status = Status::Finished;
    s.winner = Winner::Painter;
  } else {
    s.status = Status::AwaitingHuman;
  }
}

void SessionManager::engine_turn(Session& s) {
  s.pending.reset();
  if (s.status == Status::Finished) return;
  s.status = Status::AwaitingEngine;
  const int left = s.config.cap - s.state.rounds_played();
  std::optional<Move> m;
  if (s.config.policy == Policy::BookThenSolver) {
    const StrategyBook& book = StrategyBook::bundled_c4p6();
    if (book.covers(s.config.red, s.config.blue) && s.config.cap >= book.budget()) {
      m = book.lookup(s.state.board());
      if (m) s.engine_note = "book";
    }
  }
  if (!m) {
    try {
      m = s.solver->winning_move(s.state.board(), left);
      s.engine_note = m ? "solver" : "heuristic: no forced win within the cap";
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Aborted) throw;
      s.engine_note = "heuristic: search budget exhausted";
    }
  }
  if (!m) m = heuristic_move(s.state);
  s.pending = describe_pending(s.state, *m);
  s.status = Status::AwaitingHuman;
}

SessionView SessionManager::submit_color(const std::string& id, Color c) {
  auto s = find(id);
  std::lock_guard lock(s->mutex);
  if (s->status == Status::Finished) throw ServiceFailure(ServiceError::OutOfTurn, "the game is finished");
  if (s->config.human != Role::Painter || !s->pending) {
    throw ServiceFailure(ServiceError::OutOfTurn, "the human plays Builder in this session; submit an edge");
  }
  apply(*s, s->pending->move, c);
  s->pending.reset();
  engine_turn(*s);
  return view(*s);
}

SessionView SessionManager::submit_edge(const std::string& id, int u, int v) {
  auto s = find(id);
  std::lock_guard lock(s->mutex);
  if (s->status == Status::Finished) throw ServiceFailure(ServiceError::OutOfTurn, "the game is finished");
  if (s->config.human != Role::Builder) {
    throw ServiceFailure(ServiceError::OutOfTurn, "the human plays Painter in this session; submit a color");
  }
  Move m;
  try {
    m = move_from_ids(s->state.board(), u, v);
  } catch (const Error& e) {
    throw ServiceFailure(ServiceError::IllegalMove, e.what());
  }
  if (!s->state.board().playable(m)) {
    throw ServiceFailure(ServiceError::IllegalMove,
                         "edge " + std::to_string(u) + "-" + std::to_string(v) + " is already on the board");
  }
  s->status = Status::AwaitingEngine;
  const int left = s->config.cap - s->state.rounds_played();
  Color c;
  try {
    auto safe = s->solver->surviving_color(s->state.board(), m, left);
    c = safe ? *safe : s->solver->stubborn_color(s->state.board(), m, left);
    s->engine_note = safe ? "solver: survives the cap" : "solver: delays Builder longest";
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Aborted) throw;
    c = heuristic_color(s->state, m);
    s->engine_note = "heuristic: search budget exhausted";
  }
  apply(*s, m, c);
  return view(*s);
}

std::vector<MoveHint> SessionManager::hints(const std::string& id) const {
  GameState state = get(id).state;
  std::vector<MoveHint> out;
  if (state.terminal()) return out;
  const int n = state.board().vertex_count();
  for (int u = 0; u <= n; ++u) {
    for (int v = u + 1; v <= n + 1; ++v) {
      if ((u == n) != (v == n + 1)) continue;
      Move m = move_from_ids(state.board(), u, v);
      if (!state.board().playable(m)) continue;
      MoveHint h{u, v, forces_red(state, m), forces_blue(state, m), false};
      h.double_forced = h.forces_red && h.forces_blue;
      out.push_back(h);
    }
  }
  return out;
}

void SessionManager::persist_header(const Session& s) const {
  if (!options_.persist_dir) return;
  std::ofstream out(*options_.persist_dir / (s.id + ".transcript"), std::ios::trunc);
  out << to_text(s.transcript);
  if (!out) throw Error(ErrorCode::Io, "cannot write transcript for session " + s.id);
}

void SessionManager::persist_move(const Session& s, const TranscriptMove& m) const {
  if (!options_.persist_dir) return;
  std::ofstream out(*options_.persist_dir / (s.id + ".transcript"), std::ios::app);
  out << format_move_line(m) << '\n';
  if (!out) throw Error(ErrorCode::Io, "cannot append to transcript for session " + s.id);
}

void SessionManager::recover() {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(*options_.persist_dir)) {
    if (entry.path().extension() == ".transcript") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& path : files) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    Transcript t = parse_transcript(ss.str());
    auto targets = transcript_targets(t);
    auto id = t.get("session");
    auto human = role_from_string(t.get("human").value_or(""));
    auto policy = policy_from_string(t.get("policy").value_or(""));
    auto cap = t.get("cap");
    if (!targets || !id || !human || !policy || !cap) {
      throw Error(ErrorCode::Parse, path.string() + ": incomplete session header");
    }
    SessionConfig config{targets->first, targets->second, *human, *policy, std::stoi(*cap)};
    auto s = std::make_shared<Session>(*id, config, options_.engine_node_limit);
    s->state = replay(t, config.red, config.blue);
    s->transcript = t;
    finish_if_done(*s);
    if (config.human == Role::Painter) engine_turn(*s);
    if (id->size() > 1 && (*id)[0] == 's') {
      next_id_ = std::max<std::uint64_t>(next_id_, std::stoull(id->substr(1)) + 1);
    }
    sessions_[*id] = s;
  }
}

}  // namespace ramsey
