// Command-line front end; talks to the engine only through the C interface.

#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "ramsey/ramsey.h"

namespace {

struct Freer {
  void operator()(char* s) const { rg_string_free(s); }
  void operator()(rg_target* t) const { rg_target_free(t); }
  void operator()(rg_graph* g) const { rg_graph_free(g); }
  void operator()(rg_strategy* s) const { rg_strategy_free(s); }
  void operator()(rg_service* s) const { rg_service_free(s); }
};

template <class T>
using Owned = std::unique_ptr<T, Freer>;

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

// Failure raised by a C call; carries the exit code to use.
struct CallFailed {
  int exit_code;
};

bool quiet = false;

void out(const std::string& line) {
  if (!quiet) std::cout << line << '\n';
}

void result(const std::string& fields) { std::cout << "RESULT " << fields << '\n'; }

void check(rg_status st, int exit_code = kFail) {
  if (st == RG_OK) return;
  std::cerr << "error (" << rg_status_name(st) << "): " << rg_last_error() << '\n';
  throw CallFailed{st == RG_ERR_INVALID_ARGUMENT ? kUsage : exit_code};
}

Owned<rg_target> target(const std::string& spec) {
  rg_target* t = nullptr;
  check(rg_target_parse(spec.c_str(), &t), kUsage);
  return Owned<rg_target>(t);
}

std::string take(char* s) {
  Owned<char> owner(s);
  return s ? std::string(s) : std::string();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot read " << path << '\n';
    throw CallFailed{kUsage};
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void print_block(const std::string& text, const std::string& indent = "") {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out(indent + line);
}

rg_solve_options solve_options(int threads, bool fresh_fresh) {
  rg_solve_options o;
  rg_solve_options_default(&o);
  o.threads = threads;
  o.allow_fresh_fresh = fresh_fresh ? 1 : 0;
  return o;
}

void print_stats(const rg_solve_result& r) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(3);
  os << "stats nodes=" << r.nodes << " table_hits=" << r.table_hits << " table_entries=" << r.table_entries
     << " seconds=" << r.seconds;
  out(os.str());
}

volatile std::sig_atomic_t stop_requested = 0;
rg_service* running_service = nullptr;

void on_signal(int) {
  stop_requested = 1;
  if (running_service) rg_service_stop(running_service);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Builder-Painter online size Ramsey game: solver, strategy verifier, bounds, game service"};
  app.require_subcommand(1);
  int threads = 1;
  app.add_option("--threads", threads, "Worker threads for the solver")->check(CLI::Range(1, 256));
  app.add_flag("--quiet", quiet, "Print only the RESULT line");

  std::string red = "C4";
  std::string blue = "P6";

  auto* solve = app.add_subcommand("solve", "Online size Ramsey number search from the empty board");
  int cap = 0;
  std::optional<int> expect;
  bool no_fresh_fresh = false;
  std::string emit;
  bool stats = false;
  std::string start;
  solve->add_option("--red", red, "Red target: P<k>, C<k>, K<k> or file:<path>")->required();
  solve->add_option("--blue", blue, "Blue target")->required();
  solve->add_option("--cap", cap, "Round cap")->required()->check(CLI::Range(0, 64));
  solve->add_option("--expect", expect, "Exit 1 unless Builder wins in exactly this many rounds");
  solve->add_flag("--no-fresh-fresh", no_fresh_fresh, "Never join two new vertices on a nonempty board (upper bounds only)");
  solve->add_option("--emit-strategy", emit, "Write the extracted Builder strategy to this file");
  solve->add_flag("--stats", stats, "Print search statistics");
  solve->add_option("--start", start, "Start from this board file instead of the empty board");

  auto* verify = app.add_subcommand("verify", "Verify a Builder strategy file against every Painter reply");
  std::string strategy_path;
  verify->add_option("file", strategy_path, "Strategy file")->required();

  auto* bounds = app.add_subcommand("bounds", "Print known values and bounds");
  std::optional<int> k;
  std::string bounds_red;
  std::string bounds_blue;
  bounds->add_option("--k", k, "Bounds on r(C4,Pk) for k >= 6");
  bounds->add_option("--red", bounds_red, "Look up one pair: red target");
  bounds->add_option("--blue", bounds_blue, "Look up one pair: blue target");

  auto* replay = app.add_subcommand("replay", "Replay a game transcript");
  std::string transcript_path;
  std::string replay_red;
  std::string replay_blue;
  replay->add_option("transcript", transcript_path, "Transcript file")->required();
  replay->add_option("--red", replay_red, "Red target (default: the transcript's targets header)");
  replay->add_option("--blue", replay_blue, "Blue target");

  auto* extract = app.add_subcommand("extract-strategy", "Extract and verify a Builder strategy from the solver");
  int rounds = 0;
  std::string extract_out;
  extract->add_option("--red", red, "Red target")->required();
  extract->add_option("--blue", blue, "Blue target")->required();
  extract->add_option("--rounds", rounds, "Round budget")->required()->check(CLI::Range(1, 64));
  extract->add_option("--out", extract_out, "Write the strategy here instead of standard output");

  auto* serve = app.add_subcommand("serve", "Serve the session API over HTTP");
  int port = 8080;
  int max_cap = 16;
  std::string persist;
  std::string host = "127.0.0.1";
  serve->add_option("--port", port, "TCP port (0 picks a free one)")->check(CLI::Range(0, 65535));
  serve->add_option("--host", host, "Address to bind");
  serve->add_option("--max-cap", max_cap, "Largest round cap a session may ask for")->check(CLI::Range(1, 16));
  serve->add_option("--persist", persist, "Directory for session transcripts");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*solve) {
      auto r = target(red);
      auto b = target(blue);
      Owned<rg_graph> board;
      if (!start.empty()) {
        rg_graph* g = nullptr;
        check(rg_graph_from_text(read_file(start).c_str(), &g), kUsage);
        board.reset(g);
      }
      rg_solve_options opts = solve_options(threads, !no_fresh_fresh);
      rg_solve_result res{};
      char* pv = nullptr;
      check(rg_solve(r.get(), b.get(), board.get(), cap, &opts, &res, &pv));
      const std::string pv_text = take(pv);
      out("targets RED=" + std::string(rg_target_spec(r.get())) + " BLUE=" + rg_target_spec(b.get()) +
          " cap=" + std::to_string(cap) + (no_fresh_fresh ? " moves=no-fresh-fresh" : " moves=full"));
      if (res.builder_wins) {
        std::string guarantee = res.exact ? "exact: Painter survives " + std::to_string(res.rounds - 1) + " rounds"
                                          : "upper bound only: restricted Builder moves";
        out("Builder wins in " + std::to_string(res.rounds) + " rounds (" + guarantee + ")");
        out("principal variation:");
        std::istringstream in(pv_text);
        std::string line;
        while (std::getline(in, line)) {
          if (!line.empty() && line[0] != '#') out("  " + line);
        }
      } else {
        out(std::string("Painter survives ") + std::to_string(res.rounds) + " rounds" +
            (res.exact ? "" : " against restricted Builder moves (not a lower bound)"));
      }
      if (stats) print_stats(res);
      if (!emit.empty()) {
        if (!res.builder_wins) {
          std::cerr << "error: no Builder strategy within the cap to emit\n";
          return kFail;
        }
        char* text = nullptr;
        check(rg_extract_strategy(r.get(), b.get(), res.rounds, &opts, &text));
        std::ofstream f(emit);
        f << take(text);
        if (!f) {
          std::cerr << "error: cannot write " << emit << '\n';
          return kFail;
        }
        out("strategy written to " + emit);
      }
      std::string fields = res.builder_wins ? "value=" + std::to_string(res.rounds)
                                            : "survives=" + std::to_string(res.rounds);
      if (!res.exact) fields += " bound=upper";
      bool ok = true;
      if (expect) {
        ok = res.builder_wins && res.rounds == *expect && res.exact;
        if (!ok) fields += " expected=" + std::to_string(*expect) + " status=FAIL";
      }
      result(fields);
      return ok ? kOk : kFail;
    }

    if (*verify) {
      rg_strategy* s = nullptr;
      const std::string text = read_file(strategy_path);
      rg_status st = rg_strategy_parse(text.c_str(), &s);
      if (st != RG_OK) {
        std::cerr << "error (" << rg_status_name(st) << "): " << rg_last_error() << '\n';
        result(std::string("status=INVALID error=") + rg_status_name(st));
        return kFail;
      }
      Owned<rg_strategy> owner(s);
      rg_verify_result vr{};
      char* report = nullptr;
      check(rg_strategy_verify(s, &vr, &report));
      print_block(take(report));
      result("maxrounds=" + std::to_string(vr.max_rounds) + " branches=" + std::to_string(vr.branches) +
             " status=" + (vr.pass ? "PASS" : "FAIL"));
      return vr.pass ? kOk : kFail;
    }

    if (*bounds) {
      if (k) {
        int lo = 0;
        int hi = 0;
        check(rg_bounds_c4_path(*k, &lo, &hi), kUsage);
        out(std::to_string(lo) + " <= r(C4,P" + std::to_string(*k) + ") <= " + std::to_string(hi));
        result("lower=" + std::to_string(lo) + " upper=" + std::to_string(hi));
        return kOk;
      }
      if (!bounds_red.empty() || !bounds_blue.empty()) {
        if (bounds_red.empty() || bounds_blue.empty()) {
          std::cerr << "error: give both --red and --blue\n";
          return kUsage;
        }
        auto r = target(bounds_red);
        auto b = target(bounds_blue);
        int found = 0;
        int lo = 0;
        int hi = 0;
        char* source = nullptr;
        check(rg_bounds_lookup(r.get(), b.get(), &found, &lo, &hi, &source));
        const std::string src = take(source);
        const std::string pair = "r(" + bounds_red + "," + bounds_blue + ")";
        if (!found) {
          out(pair + " is not catalogued");
          result("found=no");
          return kFail;
        }
        out(lo == hi ? pair + " = " + std::to_string(lo) + "  [" + src + "]"
                     : std::to_string(lo) + " <= " + pair + " <= " + std::to_string(hi) + "  [" + src + "]");
        result("lower=" + std::to_string(lo) + " upper=" + std::to_string(hi));
        return kOk;
      }
      char* table = nullptr;
      check(rg_bounds_table(&table));
      const std::string text = take(table);
      print_block(text);
      int lines = 0;
      for (char ch : text) lines += ch == '\n';
      result("entries=" + std::to_string(lines));
      return kOk;
    }

    if (*replay) {
      Owned<rg_target> r;
      Owned<rg_target> b;
      if (!replay_red.empty() || !replay_blue.empty()) {
        if (replay_red.empty() || replay_blue.empty()) {
          std::cerr << "error: give both --red and --blue\n";
          return kUsage;
        }
        r = target(replay_red);
        b = target(replay_blue);
      }
      int played = 0;
      char completed = 0;
      char* report = nullptr;
      check(rg_replay(read_file(transcript_path).c_str(), r.get(), b.get(), &played, &completed, &report));
      print_block(take(report));
      result("rounds=" + std::to_string(played) + " completed=" +
             (completed ? std::string(1, completed) : std::string("none")));
      return kOk;
    }

    if (*extract) {
      auto r = target(red);
      auto b = target(blue);
      rg_solve_options opts = solve_options(threads, true);
      char* text = nullptr;
      check(rg_extract_strategy(r.get(), b.get(), rounds, &opts, &text));
      const std::string strategy = take(text);
      if (extract_out.empty()) {
        if (!quiet) std::cout << strategy;
      } else {
        std::ofstream f(extract_out);
        f << strategy;
        if (!f) {
          std::cerr << "error: cannot write " << extract_out << '\n';
          return kFail;
        }
        out("strategy written to " + extract_out);
      }
      rg_strategy* s = nullptr;
      check(rg_strategy_parse(strategy.c_str(), &s));
      Owned<rg_strategy> owner(s);
      rg_verify_result vr{};
      check(rg_strategy_verify(s, &vr, nullptr));
      result("maxrounds=" + std::to_string(vr.max_rounds) + " branches=" + std::to_string(vr.branches) +
             " status=" + (vr.pass ? "PASS" : "FAIL"));
      return vr.pass ? kOk : kFail;
    }

    if (*serve) {
      rg_service* svc = nullptr;
      check(rg_service_new(persist.empty() ? nullptr : persist.c_str(), max_cap, &svc));
      Owned<rg_service> owner(svc);
      running_service = svc;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      std::cerr << "serving on " << host << ':' << port << '\n';
      rg_status st = rg_service_listen(svc, host.c_str(), port);
      running_service = nullptr;
      check(st);
      result("status=STOPPED");
      return kOk;
    }
  } catch (const CallFailed& f) {
    return f.exit_code;
  }
  return kUsage;
}
