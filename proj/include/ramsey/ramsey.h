/* C interface to the online Ramsey game engine.
 *
 * Objects are opaque handles created by *_new / *_parse functions and
 * released by the matching *_free. Functions return RG_OK or an error code;
 * rg_last_error() describes the most recent failure on the calling thread.
 * Strings returned through char** out-parameters are owned by the caller and
 * released with rg_string_free.
 *
 * Colors are the characters 'R' and 'B'. Vertex ids are dense from 0; in
 * moves, RG_FRESH (or any id not yet on the board, numbered in order) names a
 * new vertex.
 */
#ifndef RAMSEY_RAMSEY_H
#define RAMSEY_RAMSEY_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define RG_API __declspec(dllexport)
#else
#define RG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

#define RG_FRESH (-1)

typedef enum rg_status {
  RG_OK = 0,
  RG_ERR_INVALID_ARGUMENT = 1,
  RG_ERR_DUPLICATE_EDGE = 2,
  RG_ERR_SELF_LOOP = 3,
  RG_ERR_CAPACITY = 4,
  RG_ERR_INVALID_VERTEX = 5,
  RG_ERR_PARSE = 6,
  RG_ERR_STATE_ALREADY_WON = 7,
  RG_ERR_NO_STRATEGY = 8,
  RG_ERR_MISSING_PATTERN = 9,
  RG_ERR_MALFORMED_LEAF = 10,
  RG_ERR_SEMANTIC = 11,
  RG_ERR_IO = 12,
  RG_ERR_ABORTED = 13,
  RG_ERR_NOT_FOUND = 14,
  RG_ERR_INTERNAL = 15
} rg_status;

typedef struct rg_graph rg_graph;
typedef struct rg_target rg_target;
typedef struct rg_strategy rg_strategy;
typedef struct rg_service rg_service;

RG_API const char* rg_version(void);
RG_API const char* rg_status_name(rg_status status);
/* Message for the last failing call on this thread; empty after success. */
RG_API const char* rg_last_error(void);
RG_API void rg_string_free(char* s);

/* Boards. */
RG_API rg_status rg_graph_new(rg_graph** out);
RG_API rg_status rg_graph_from_text(const char* text, rg_graph** out);
RG_API rg_status rg_graph_to_text(const rg_graph* g, char** out);
RG_API rg_status rg_graph_copy(const rg_graph* g, rg_graph** out);
RG_API void rg_graph_free(rg_graph* g);
RG_API int rg_graph_vertex_count(const rg_graph* g);
RG_API int rg_graph_edge_count(const rg_graph* g);
/* Writes the resolved endpoint ids to out_u/out_v when non-null. */
RG_API rg_status rg_graph_add_edge(rg_graph* g, int u, int v, char color, int* out_u, int* out_v);
/* 'R', 'B', or 0 when the pair is not an edge. */
RG_API char rg_graph_edge_color(const rg_graph* g, int u, int v);
/* Hex string; equal for color-preserving isomorphic boards only. */
RG_API rg_status rg_graph_canonical_key(const rg_graph* g, char** out);

/* Targets: "P<k>", "C<k>", "K<k>" or "file:<path>". */
RG_API rg_status rg_target_parse(const char* spec, rg_target** out);
RG_API void rg_target_free(rg_target* t);
RG_API const char* rg_target_spec(const rg_target* t);
RG_API rg_status rg_contains_mono(const rg_graph* g, const rg_target* t, char color, int* out);
/* Sets *forces_red / *forces_blue for Builder proposing (u, v) on g. */
RG_API rg_status rg_forcing(const rg_graph* g, const rg_target* red, const rg_target* blue, int u, int v,
                            int* forces_red, int* forces_blue);

/* Solver. */
typedef struct rg_solve_options {
  int use_transposition;  /* default 1 */
  int allow_fresh_fresh;  /* default 1; 0 restricts Builder (upper bounds only) */
  int deficit_pruning;    /* default 1 */
  int threads;            /* default 1 */
  uint64_t node_limit;    /* 0 = unlimited */
} rg_solve_options;

typedef struct rg_solve_result {
  int builder_wins; /* 1: Builder wins within `rounds`; 0: Painter survives `rounds` (the cap) */
  int rounds;
  int exact;        /* searched with the full move set */
  uint64_t nodes;
  uint64_t table_hits;
  uint64_t table_entries;
  double seconds;
} rg_solve_result;

RG_API void rg_solve_options_default(rg_solve_options* options);
/* Solves from `start` (NULL for the empty board). When pv is non-null and
 * Builder wins, receives the principal variation as transcript text. */
RG_API rg_status rg_solve(const rg_target* red, const rg_target* blue, const rg_graph* start, int cap,
                          const rg_solve_options* options, rg_solve_result* out, char** pv);
RG_API rg_status rg_painter_survival(const rg_target* red, const rg_target* blue, int rounds,
                                     const rg_solve_options* options, int* survives, rg_solve_result* stats);
/* Strategy file text for Builder winning within `rounds`. */
RG_API rg_status rg_extract_strategy(const rg_target* red, const rg_target* blue, int rounds,
                                     const rg_solve_options* options, char** out);

/* Strategy files. */
typedef struct rg_verify_result {
  int pass;
  int budget;
  int max_rounds;
  int branches;
  int failures;
} rg_verify_result;

RG_API rg_status rg_strategy_parse(const char* text, rg_strategy** out);
RG_API rg_status rg_strategy_bundled(rg_strategy** out);
RG_API void rg_strategy_free(rg_strategy* s);
RG_API rg_status rg_strategy_to_text(const rg_strategy* s, char** out);
/* report receives the line-oriented verification report when non-null. */
RG_API rg_status rg_strategy_verify(const rg_strategy* s, rg_verify_result* out, char** report);

/* Bounds catalog. */
RG_API rg_status rg_bounds_table(char** out);
/* *found = 0 when the pair is not catalogued; *source is optional. */
RG_API rg_status rg_bounds_lookup(const rg_target* red, const rg_target* blue, int* found, int* lower, int* upper,
                                  char** source);
RG_API rg_status rg_bounds_c4_path(int k, int* lower, int* upper);

/* Transcripts. red/blue may be NULL when the transcript carries a
 * `# targets RED=.. BLUE=..` header. *completed is 'R', 'B' or 0. */
RG_API rg_status rg_replay(const char* transcript, const rg_target* red, const rg_target* blue, int* rounds,
                           char* completed, char** report);

/* Session service. persist_dir may be NULL. */
RG_API rg_status rg_service_new(const char* persist_dir, int max_cap, rg_service** out);
RG_API void rg_service_free(rg_service* s);
/* Dispatches one request without a socket. */
RG_API rg_status rg_service_handle(rg_service* s, const char* method, const char* path, const char* body,
                                   int* http_status, char** response);
/* Serves HTTP until rg_service_stop; port 0 picks a free port. */
RG_API rg_status rg_service_listen(rg_service* s, const char* host, int port);
RG_API int rg_service_port(const rg_service* s);
RG_API void rg_service_stop(rg_service* s);

#ifdef __cplusplus
}
#endif

#endif /* RAMSEY_RAMSEY_H */
