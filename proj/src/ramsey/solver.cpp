#include "ramsey/solver.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <thread>

#include "ramsey/embed.hpp"

namespace ramsey {

class Solver::Cancelled {};

// Sets the node ceiling for the outermost public call.
class Solver::Budget {
 public:
  explicit Budget(Solver& s) : s_(s) {
    if (s_.depth_++ == 0) {
      s_.ceiling_ = s_.options_.node_limit == 0 ? UINT64_MAX : s_.nodes_.load() + s_.options_.node_limit;
    }
  }
  ~Budget() { --s_.depth_; }
  Budget(const Budget&) = delete;
  Budget& operator=(const Budget&) = delete;

 private:
  Solver& s_;
};

struct Solver::Node {
  Move move;
  int category = 0;  // lower is tried first
  std::array<bool, 2> completes{};
  std::array<int, 2> need_after{};  // deficit of the colored target in the child
  std::array<ColoredGraph, 2> child;
  std::array<Color, 2> order{Color::Red, Color::Blue};
};

namespace {

bool holds_target(const ColoredGraph& g, const Target& red, const Target& blue) {
  return contains_mono(g, red, Color::Red) || contains_mono(g, blue, Color::Blue);
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

Solver::Solver(Target red, Target blue, SolveOptions options)
    : red_(std::move(red)), blue_(std::move(blue)), options_(options), table_(options.table_limit) {
  if (options_.threads < 1) options_.threads = 1;
}

Solver::~Solver() = default;

int Solver::red_need(const ColoredGraph& g) const { return completion_deficit(g, red_, Color::Red); }
int Solver::blue_need(const ColoredGraph& g) const { return completion_deficit(g, blue_, Color::Blue); }

void Solver::count_node() {
  if (stop_.load(std::memory_order_relaxed)) throw Cancelled{};
  auto n = nodes_.fetch_add(1, std::memory_order_relaxed) + 1;
  if (n > ceiling_) {
    throw Error(ErrorCode::Aborted, "node limit of " + std::to_string(options_.node_limit) + " exceeded");
  }
}

std::vector<Solver::Node> Solver::expand(const ColoredGraph& g, int t, int need_r, int need_b,
                                         const PairSet& red_threats, const PairSet& blue_threats,
                                         const CanonicalForm& form) {
  const std::array<const Target*, 2> targets{&red_, &blue_};
  const std::array<int, 2> need{need_r, need_b};
  std::vector<Node> nodes;
  for (const auto& orbit : automorphism_orbits(g, form)) {
    const Move m = orbit.representative;
    if (m.fresh_count() == 2 && !options_.allow_fresh_fresh && !g.empty()) continue;
    Node node;
    node.move = m;
    node.completes = {red_threats.contains(m), blue_threats.contains(m)};
    bool feasible = true;
    int progress = 0;
    for (Color c : kColors) {
      const int i = index(c);
      if (node.completes[i]) continue;
      node.child[i] = g.with_edge(m, c);
      const int e = targets[i]->edge_count();
      const bool advanced = need[i] > 1 && covers_edges(node.child[i], *targets[i], c, e - need[i] + 1);
      node.need_after[i] = need[i] - (advanced ? 1 : 0);
      progress += advanced;
      const int other = need[1 - i];
      if (options_.deficit_pruning && t - 1 < node.need_after[i] + other - 1) feasible = false;
    }
    if (!feasible) continue;
    // Painter's likely refutation first: the color that makes no progress.
    if (!node.completes[0] && !node.completes[1] && node.need_after[1] == need_b && node.need_after[0] < need_r) {
      node.order = {Color::Blue, Color::Red};
    }
    node.category = (node.completes[0] || node.completes[1]) ? 0 : 3 - progress;
    nodes.push_back(std::move(node));
  }
  std::stable_sort(nodes.begin(), nodes.end(), [](const Node& a, const Node& b) { return a.category < b.category; });
  return nodes;
}

bool Solver::search(const ColoredGraph& g, int t, int need_r, int need_b) {
  count_node();
  if (t <= 0) return false;
  if (options_.deficit_pruning && t < need_r + need_b - 1) return false;
  PairSet red_threats;
  PairSet blue_threats;
  if (need_r == 1) red_threats = threat_pairs(g, red_, Color::Red);
  if (need_b == 1) blue_threats = threat_pairs(g, blue_, Color::Blue);
  if (!(red_threats & blue_threats).empty()) return true;
  if (t == 1) return false;

  const CanonicalForm form = canonical_form(g);
  if (options_.use_transposition) {
    if (auto known = table_.probe(form.key, t)) {
      hits_.fetch_add(1, std::memory_order_relaxed);
      return *known;
    }
  }
  bool result = false;
  for (const Node& node : expand(g, t, need_r, need_b, red_threats, blue_threats, form)) {
    bool all = true;
    for (Color c : node.order) {
      const int i = index(c);
      if (node.completes[i]) continue;
      const int nr = c == Color::Red ? node.need_after[i] : need_r;
      const int nb = c == Color::Blue ? node.need_after[i] : need_b;
      if (!search(node.child[i], t - 1, nr, nb)) {
        all = false;
        break;
      }
    }
    if (all) {
      result = true;
      break;
    }
  }
  if (options_.use_transposition) table_.store(form.key, t, result);
  return result;
}

bool Solver::root_search(const ColoredGraph& g, int t, int need_r, int need_b) {
  if (options_.threads <= 1 || t <= 2) return search(g, t, need_r, need_b);

  count_node();
  if (options_.deficit_pruning && t < need_r + need_b - 1) return false;
  PairSet red_threats;
  PairSet blue_threats;
  if (need_r == 1) red_threats = threat_pairs(g, red_, Color::Red);
  if (need_b == 1) blue_threats = threat_pairs(g, blue_, Color::Blue);
  if (!(red_threats & blue_threats).empty()) return true;

  const CanonicalForm form = canonical_form(g);
  if (options_.use_transposition) {
    if (auto known = table_.probe(form.key, t)) {
      hits_.fetch_add(1, std::memory_order_relaxed);
      return *known;
    }
  }
  const auto nodes = expand(g, t, need_r, need_b, red_threats, blue_threats, form);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> found{false};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    try {
      for (std::size_t k = next++; k < nodes.size() && !found; k = next++) {
        const Node& node = nodes[k];
        bool all = true;
        for (Color c : node.order) {
          const int i = index(c);
          if (node.completes[i]) continue;
          const int nr = c == Color::Red ? node.need_after[i] : need_r;
          const int nb = c == Color::Blue ? node.need_after[i] : need_b;
          if (!search(node.child[i], t - 1, nr, nb)) {
            all = false;
            break;
          }
        }
        if (all) {
          found = true;
          stop_ = true;
        }
      }
    } catch (const Cancelled&) {
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      stop_ = true;
    }
  };
  std::vector<std::thread> pool;
  for (int i = 0; i < options_.threads; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  stop_ = false;
  if (failure && !found) std::rethrow_exception(failure);
  if (options_.use_transposition) table_.store(form.key, t, found);
  return found;
}

bool Solver::builder_wins(const ColoredGraph& board, int rounds) {
  Budget budget(*this);
  if (holds_target(board, red_, blue_)) return true;
  if (rounds <= 0) return false;
  return root_search(board, rounds, red_need(board), blue_need(board));
}

SolveOutcome Solver::value(const ColoredGraph& board, int cap, bool with_pv) {
  Budget budget(*this);
  if (cap < 0) throw Error(ErrorCode::InvalidArgument, "cap must be non-negative");
  const auto start = std::chrono::steady_clock::now();
  const auto nodes_before = nodes_.load();
  const auto hits_before = hits_.load();
  SolveOutcome out;
  out.exact = options_.allow_fresh_fresh;
  if (holds_target(board, red_, blue_)) {
    out.kind = SolveOutcome::Kind::WinIn;
    out.rounds = 0;
    out.exact = true;
  } else {
    const int need_r = red_need(board);
    const int need_b = blue_need(board);
    int t = options_.deficit_pruning ? std::max(1, need_r + need_b - 1) : 1;
    out.kind = SolveOutcome::Kind::SurvivesCap;
    out.rounds = cap;
    for (; t <= cap; ++t) {
      if (root_search(board, t, need_r, need_b)) {
        out.kind = SolveOutcome::Kind::WinIn;
        out.rounds = t;
        break;
      }
    }
  }
  if (with_pv && out.builder_wins()) {
    ColoredGraph g = board;
    int left = out.rounds;
    while (left > 0 && !holds_target(g, red_, blue_)) {
      auto m = winning_move(g, left);
      if (!m) throw Error(ErrorCode::Aborted, "principal variation lost its winning line");
      const Color c = stubborn_color(g, *m, left);
      auto [u, v] = g.resolve(*m);
      out.principal_variation.push_back({u, v, c});
      g = g.with_edge(*m, c);
      --left;
      if (holds_target(g, red_, blue_)) break;
      const auto rest = value(g, left);
      left = rest.rounds;
    }
  }
  out.stats.nodes = nodes_.load() - nodes_before;
  out.stats.table_hits = hits_.load() - hits_before;
  out.stats.table_entries = table_.size();
  out.stats.seconds = seconds_since(start);
  return out;
}

std::optional<Move> Solver::winning_move(const ColoredGraph& board, int rounds) {
  Budget budget(*this);
  if (rounds <= 0 || holds_target(board, red_, blue_)) return std::nullopt;
  const int need_r = red_need(board);
  const int need_b = blue_need(board);
  if (options_.deficit_pruning && rounds < need_r + need_b - 1) return std::nullopt;
  PairSet red_threats;
  PairSet blue_threats;
  if (need_r == 1) red_threats = threat_pairs(board, red_, Color::Red);
  if (need_b == 1) blue_threats = threat_pairs(board, blue_, Color::Blue);
  if (auto both = (red_threats & blue_threats).first()) return both;
  if (rounds == 1) return std::nullopt;
  const CanonicalForm form = canonical_form(board);
  for (const Node& node : expand(board, rounds, need_r, need_b, red_threats, blue_threats, form)) {
    bool all = true;
    for (Color c : node.order) {
      const int i = index(c);
      if (node.completes[i]) continue;
      const int nr = c == Color::Red ? node.need_after[i] : need_r;
      const int nb = c == Color::Blue ? node.need_after[i] : need_b;
      if (!search(node.child[i], rounds - 1, nr, nb)) {
        all = false;
        break;
      }
    }
    if (all) return node.move;
  }
  return std::nullopt;
}

std::optional<Color> Solver::surviving_color(const ColoredGraph& board, const Move& m, int rounds) {
  Budget budget(*this);
  for (Color c : kColors) {
    const ColoredGraph child = board.with_edge(m, c);
    if (holds_target(child, red_, blue_)) continue;
    if (!builder_wins(child, rounds - 1)) return c;
  }
  return std::nullopt;
}

Color Solver::stubborn_color(const ColoredGraph& board, const Move& m, int rounds) {
  Budget budget(*this);
  Color best = Color::Red;
  int best_score = -1;
  for (Color c : kColors) {
    const ColoredGraph child = board.with_edge(m, c);
    if (holds_target(child, red_, blue_)) continue;
    const auto v = value(child, std::max(0, rounds - 1));
    const int score = v.builder_wins() ? v.rounds : rounds + 1;
    if (score > best_score) {
      best_score = score;
      best = c;
    }
  }
  return best;
}

SolveStats Solver::stats() const {
  SolveStats s;
  s.nodes = nodes_.load();
  s.table_hits = hits_.load();
  s.table_entries = table_.size();
  return s;
}

SolveOutcome online_size_ramsey(const Target& red, const Target& blue, int cap, const SolveOptions& options,
                                bool with_pv) {
  Solver solver(red, blue, options);
  return solver.value(ColoredGraph{}, cap, with_pv);
}

Color PainterOracle::reply(const ColoredGraph& board, const Move& m, int played) const {
  const int left = rounds_ - played;
  if (auto c = solver_->surviving_color(board, m, left)) return *c;
  return solver_->stubborn_color(board, m, left);
}

SurvivalResult painter_survival(const Target& red, const Target& blue, int rounds, SolveOptions options) {
  options.allow_fresh_fresh = true;
  const auto start = std::chrono::steady_clock::now();
  auto solver = std::make_shared<Solver>(red, blue, options);
  SurvivalResult out;
  out.survives = rounds <= 0 || !solver->builder_wins(ColoredGraph{}, rounds);
  out.stats = solver->stats();
  out.stats.seconds = seconds_since(start);
  if (out.survives) out.witness.emplace(solver, std::max(0, rounds));
  return out;
}

namespace {

StrategyNode build_tree(Solver& solver, const ColoredGraph& g, int rounds, std::vector<std::string>& alphabet) {
  auto m = solver.winning_move(g, rounds);
  if (!m) throw Error(ErrorCode::NoStrategy, "lost the winning line during extraction");
  auto [u, v] = g.resolve(*m);
  StrategyNode node;
  node.u = display_name(u);
  node.v = display_name(v);
  for (const auto& name : {node.u, node.v}) {
    if (std::find(alphabet.begin(), alphabet.end(), name) == alphabet.end()) alphabet.push_back(name);
  }
  for (Color c : kColors) {
    const ColoredGraph child = g.with_edge(*m, c);
    const Target& t = c == Color::Red ? solver.red() : solver.blue();
    if (contains_mono(child, t, c)) {
      node.lose_if[index(c)] = true;
    } else {
      node.child[index(c)] = std::make_unique<StrategyNode>(build_tree(solver, child, rounds - 1, alphabet));
    }
  }
  if (node.lose_if[0] && node.lose_if[1]) {
    node.lose_if = {false, false};
    node.win = true;
  }
  return node;
}

int name_rank(const std::string& name) {
  if (name.size() == 1) return name[0] - 'A';
  return std::stoi(name.substr(1));
}

}  // namespace

StrategyFile extract_builder_strategy(Solver& solver, int rounds) {
  if (rounds < 1 || !solver.builder_wins(ColoredGraph{}, rounds)) {
    throw Error(ErrorCode::NoStrategy, "Builder cannot force " + solver.red().spec() + " red or " +
                                           solver.blue().spec() + " blue within " + std::to_string(rounds) +
                                           " rounds");
  }
  StrategyFile file;
  file.red = solver.red();
  file.blue = solver.blue();
  file.budget = rounds;
  StrategyCase main{"main", build_tree(solver, ColoredGraph{}, rounds, file.alphabet), 0};
  std::sort(file.alphabet.begin(), file.alphabet.end(),
            [](const std::string& a, const std::string& b) { return name_rank(a) < name_rank(b); });
  file.patterns.push_back(PatternEntry{"", "main", false, {}, 0});
  file.cases.push_back(std::move(main));
  return file;
}

StrategyFile extract_builder_strategy(const Target& red, const Target& blue, int rounds,
                                      const SolveOptions& options) {
  Solver solver(red, blue, options);
  return extract_builder_strategy(solver, rounds);
}

}  // namespace ramsey
