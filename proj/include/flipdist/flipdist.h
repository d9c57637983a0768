/*
 * flipdist C API.
 *
 * Every function returns an fd_status. On failure a description of the error
 * is available from fd_last_error() on the calling thread until the next call
 * into the library from that thread. Handles are opaque; an fd_instance is
 * immutable apart from fd_instance_set_k and may be shared between threads
 * for read-only calls.
 */
#ifndef FLIPDIST_H
#define FLIPDIST_H

#include <stddef.h>
#include <stdint.h>

#if defined(FLIPDIST_BUILDING_LIBRARY)
#define FD_API __attribute__((visibility("default")))
#else
#define FD_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* The numeric values double as the CLI exit codes. */
typedef enum fd_status {
  FD_OK = 0,            /* success, or the decision accepted */
  FD_REJECT = 1,        /* the decision rejected */
  FD_ERR_INPUT = 2,     /* malformed or invalid input */
  FD_ERR_BUDGET = 3,    /* search cap or budget exceeded */
  FD_ERR_INTERNAL = 4
} fd_status;

typedef enum fd_hull_shape {
  FD_SHAPE_SCATTER = 0,
  FD_SHAPE_POLYGON = 1
} fd_hull_shape;

typedef enum fd_dag_format {
  FD_DAG_TEXT = 0,
  FD_DAG_DOT = 1
} fd_dag_format;

typedef enum fd_stack_mode {
  FD_STACK_CLEARED = 0,
  FD_STACK_PERSISTENT = 1
} fd_stack_mode;

typedef struct fd_instance fd_instance;

typedef struct fd_solver_options {
  int pruning;              /* nonzero: memoize states (never changes decisions) */
  fd_stack_mode stack_mode;
  int all_rotations;        /* nonzero: also try every rotation of the changed-edge order */
  uint64_t state_budget;    /* 0 = unlimited */
} fd_solver_options;

typedef struct fd_search_stats {
  uint64_t states_explored;
  uint64_t memo_hits;
  uint32_t max_branching;
  uint64_t branching_violations;
  double millis;
} fd_search_stats;

FD_API const char* fd_version(void);
FD_API const char* fd_last_error(void);

/* Default solver options: pruning on, cleared stack, fixed order, no budget. */
FD_API fd_solver_options fd_default_solver_options(void);

/* Instances */
FD_API fd_status fd_instance_parse(const char* text, size_t length, fd_instance** out);
FD_API fd_status fd_instance_generate(uint32_t n, fd_hull_shape shape, uint32_t scramble,
                                      uint64_t seed, fd_instance** out);
FD_API void fd_instance_free(fd_instance* instance);

/* Writes the instance in file format. Free the result with fd_string_free. */
FD_API fd_status fd_instance_render(const fd_instance* instance, char** out);
FD_API void fd_string_free(char* text);

FD_API uint32_t fd_instance_point_count(const fd_instance* instance);
FD_API uint32_t fd_instance_hull_size(const fd_instance* instance);
/* Number of changed edges between the two triangulations. */
FD_API uint32_t fd_instance_changed_edge_count(const fd_instance* instance);
/* Returns 1 and stores k if the instance carries one, else 0. */
FD_API int fd_instance_get_k(const fd_instance* instance, uint32_t* k);
FD_API void fd_instance_set_k(fd_instance* instance, uint32_t k);
FD_API void fd_instance_clear_k(fd_instance* instance);

/* Exact distance by breadth-first search. FD_ERR_BUDGET if the distance
 * exceeds cap or more than node_budget triangulations are visited. */
FD_API fd_status fd_oracle_distance(const fd_instance* instance, uint32_t cap,
                                    uint64_t node_budget, uint32_t* distance,
                                    fd_search_stats* stats);

/* FD_OK if the walker finds a run with exactly k flips, FD_REJECT if not.
 * options and stats may be NULL. */
FD_API fd_status fd_fpt_exists(const fd_instance* instance, uint32_t k,
                               const fd_solver_options* options, fd_search_stats* stats);

/* FD_OK iff the flip distance is exactly k. */
FD_API fd_status fd_fpt_decide(const fd_instance* instance, uint32_t k,
                               const fd_solver_options* options, fd_search_stats* stats);

/* flips holds count (a, b) point-id pairs. On an invalid sequence returns
 * FD_ERR_INPUT and stores the 1-based position in *bad_position if given. */
FD_API fd_status fd_dag_report(const fd_instance* instance, const uint32_t* flips, size_t count,
                               fd_dag_format format, char** out, size_t* bad_position);

#ifdef __cplusplus
}
#endif

#endif /* FLIPDIST_H */
