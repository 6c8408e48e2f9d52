#ifndef QGAIN_H
#define QGAIN_H

/* Generated by cbindgen from qgain-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Which lower-bound case applies to a graph.
 */
typedef enum QgBoundCase {
  QG_BOUND_HAS_PENDANT = 0,
  QG_BOUND_LEAF_FREE_CYCLE_DISJOINT = 1,
  QG_BOUND_LEAF_FREE_SHARED_CYCLES = 2,
} QgBoundCase;

/**
 * Status codes returned by every fallible function.
 */
typedef enum QgStatus {
  /**
   * Success.
   */
  QG_OK = 0,
  /**
   * A required pointer argument was NULL.
   */
  QG_NULL_ARGUMENT = 1,
  /**
   * Input text was not valid UTF-8.
   */
  QG_INVALID_UTF8 = 2,
  /**
   * The graph JSON failed to parse or validate.
   */
  QG_PARSE_ERROR = 3,
  /**
   * The operation does not apply to this graph.
   */
  QG_UNSUPPORTED = 4,
} QgStatus;

/**
 * Opaque gain graph handle.
 */
typedef struct QgGraph QgGraph;

/**
 * Counting statistics of a graph.
 */
typedef struct QgStats {
  uint64_t vertices;
  uint64_t edges;
  uint64_t components;
  uint64_t cyclomatic;
  uint64_t pendants;
} QgStats;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parse a graph from the JSON format. On success writes a fresh handle to
 * `out`; release it with [`qg_graph_free`].
 *
 * # Safety
 * `json` must point to a NUL-terminated string and `out` to writable
 * storage for one pointer; both must stay valid for the duration of the
 * call.
 */
enum QgStatus qg_graph_parse_json(const char *json, struct QgGraph **out);

/**
 * Release a graph handle. NULL is accepted and ignored.
 *
 * # Safety
 * `graph` must be NULL or a pointer returned by this library that has not
 * been freed yet.
 */
void qg_graph_free(struct QgGraph *graph);

/**
 * Counting statistics.
 *
 * # Safety
 * `graph` must be a live handle from this library and `out` writable.
 */
enum QgStatus qg_graph_stats(const struct QgGraph *graph, struct QgStats *out);

/**
 * Exact row left rank of the adjacency matrix.
 *
 * # Safety
 * `graph` must be a live handle from this library and `out` writable.
 */
enum QgStatus qg_graph_rank(const struct QgGraph *graph, uint64_t *out);

/**
 * Rank through the complex representation: half the complex rank of the
 * representation matrix. Always equals [`qg_graph_rank`]; exposed so
 * callers can cross-check.
 *
 * # Safety
 * `graph` must be a live handle from this library and `out` writable.
 */
enum QgStatus qg_graph_adjoint_rank(const struct QgGraph *graph, uint64_t *out);

/**
 * Float-mode rank with tolerance pivoting.
 *
 * # Safety
 * `graph` must be a live handle from this library and `out` writable.
 */
enum QgStatus qg_graph_rank_float(const struct QgGraph *graph, double pivot_tol, uint64_t *out);

/**
 * Structural rank: `lo == hi` when exact, otherwise a sound interval
 * containing the true rank.
 *
 * # Safety
 * `graph` must be a live handle; `lo` and `hi` must be writable.
 */
enum QgStatus qg_graph_structural_rank(const struct QgGraph *graph, uint64_t *lo, uint64_t *hi);

/**
 * Lower-bound classification. Fails with `QgUnsupported` when some
 * component is a single vertex.
 *
 * # Safety
 * `graph` must be a live handle; `case_out` and `bound_out` writable.
 */
enum QgStatus qg_graph_lower_bound(const struct QgGraph *graph,
                                   enum QgBoundCase *case_out,
                                   int64_t *bound_out);

/**
 * Serialize a graph back to the JSON format. Returns a fresh string to be
 * released with [`qg_string_free`], or NULL on error.
 *
 * # Safety
 * `graph` must be a live handle from this library.
 */
char *qg_graph_to_json(const struct QgGraph *graph);

/**
 * Message describing the most recent failure on this thread, or NULL when
 * none. Release with [`qg_string_free`].
 */
char *qg_last_error_message(void);

/**
 * Release a string returned by this library. NULL is accepted and ignored.
 *
 * # Safety
 * `s` must be NULL or a string pointer returned by this library that has
 * not been freed yet.
 */
void qg_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* QGAIN_H */
