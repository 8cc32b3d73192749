#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "ramsey/book.hpp"
#include "ramsey/solver.hpp"
#include "ramsey/transcript.hpp"

namespace ramsey {

enum class Role { Painter, Builder };
enum class Policy { BookThenSolver, SolverOnly };
enum class Status { AwaitingHuman, AwaitingEngine, Finished };
enum class Winner { None, Builder, Painter };

std::string to_string(Role r);
std::string to_string(Policy p);
std::string to_string(Status s);
std::string to_string(Winner w);
std::optional<Role> role_from_string(std::string_view s);
std::optional<Policy> policy_from_string(std::string_view s);

struct SessionConfig {
  Target red = Target::cycle(4);
  Target blue = Target::path(6);
  Role human = Role::Painter;
  Policy policy = Policy::BookThenSolver;
  int cap = 11;
};

// Builder's proposed edge while Painter (the human) decides.
struct PendingEdge {
  Move move;
  int u = 0;  // resolved ids; fresh endpoints get the next ids
  int v = 0;
  bool forces_red = false;
  bool forces_blue = false;
  bool double_forced = false;
};

struct MoveHint {
  int u = 0;
  int v = 0;
  bool forces_red = false;
  bool forces_blue = false;
  bool double_forced = false;
};

// Snapshot handed to readers.
struct SessionView {
  std::string id;
  SessionConfig config;
  GameState state{Target::cycle(4), Target::path(6)};
  Transcript transcript;
  std::optional<PendingEdge> pending;
  Status status = Status::AwaitingHuman;
  Winner winner = Winner::None;
  std::string engine_note;  // how the engine chose its last move
};

// Errors surfaced to API clients by code.
enum class ServiceError { UnknownSession, OutOfTurn, IllegalMove, Validation, Capacity };

class ServiceFailure : public std::runtime_error {
 public:
  ServiceFailure(ServiceError code, const std::string& message) : std::runtime_error(message), code_(code) {}
  ServiceError code() const noexcept { return code_; }

 private:
  ServiceError code_;
};

std::string to_string(ServiceError e);

struct ServiceOptions {
  int max_cap = 16;
  std::size_t max_sessions = 256;
  std::optional<std::filesystem::path> persist_dir;
  // Search effort per engine decision before falling back to a heuristic.
  std::uint64_t engine_node_limit = 2'000'000;
};

// Live games between a human and the engine. Each session is serialized by
// its own lock; the registry lock is held only to find or add a session.
class SessionManager {
 public:
  explicit SessionManager(ServiceOptions options = {});
  ~SessionManager();

  SessionView create(const SessionConfig& config);
  SessionView get(const std::string& id) const;
  SessionView submit_color(const std::string& id, Color c);
  SessionView submit_edge(const std::string& id, int u, int v);
  std::vector<MoveHint> hints(const std::string& id) const;
  std::vector<std::string> ids() const;

  const ServiceOptions& options() const noexcept { return options_; }

 private:
  struct Session;

  std::shared_ptr<Session> find(const std::string& id) const;
  void engine_turn(Session& s);
  void apply(Session& s, const Move& m, Color c);
  void finish_if_done(Session& s);
  void persist_header(const Session& s) const;
  void persist_move(const Session& s, const TranscriptMove& m) const;
  void recover();
  static SessionView view(const Session& s);

  ServiceOptions options_;
  mutable std::shared_mutex registry_mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::uint64_t next_id_ = 1;
};

}  // namespace ramsey
