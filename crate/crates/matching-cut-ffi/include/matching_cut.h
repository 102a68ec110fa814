#ifndef MATCHING_CUT_H
#define MATCHING_CUT_H

/* Generated by cbindgen; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every FFI entry point.
 */
typedef enum McStatus {
  MC_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  MC_STATUS_NULL_ARGUMENT = 1,
  /**
   * An argument value was out of range (for example a side index).
   */
  MC_STATUS_INVALID_ARGUMENT = 2,
  /**
   * Input text was not valid UTF-8.
   */
  MC_STATUS_INVALID_UTF8 = 3,
  /**
   * Input text did not parse; see mc_last_error for line and column.
   */
  MC_STATUS_PARSE_ERROR = 4,
  /**
   * The edge list did not describe a simple graph.
   */
  MC_STATUS_INVALID_GRAPH = 5,
  /**
   * The claimed cut was not a partition of the vertex set.
   */
  MC_STATUS_INVALID_CUT = 6,
  /**
   * The solver rejected the instance or failed internally.
   */
  MC_STATUS_SOLVER_ERROR = 7,
  /**
   * A configured resource cap (oracle size or node budget) was exceeded.
   */
  MC_STATUS_CAP_EXCEEDED = 8,
  /**
   * The provided buffer was too small; the required size was written.
   */
  MC_STATUS_BUFFER_TOO_SMALL = 9,
  /**
   * An internal invariant failed.
   */
  MC_STATUS_INTERNAL_ERROR = 10,
} McStatus;

/**
 * Opaque graph handle.
 */
typedef struct McGraph McGraph;

/**
 * Opaque verdict handle; owns the witness cut when the answer is yes.
 */
typedef struct McVerdict McVerdict;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Returns the message of the most recent failure on this thread, or null if
 * none occurred yet. The pointer stays valid until the next failing call on
 * the same thread.
 */
const char *mc_last_error(void);

/**
 * Builds a graph on `vertex_count` vertices from `edge_count` endpoint
 * pairs laid out as `[u0, v0, u1, v1, ...]`.
 *
 * # Safety
 * `edges` must point to `2 * edge_count` readable `size_t` values (it may
 * be null when `edge_count` is 0); `out` must be a valid writable pointer.
 * On MC_STATUS_OK the handle written to `out` must be released with
 * `mc_graph_free`.
 */
enum McStatus mc_graph_new(size_t vertex_count,
                           const size_t *edges,
                           size_t edge_count,
                           struct McGraph **out);

/**
 * Parses the edge-list text format (`p mc <n> <m>` header, `e <u> <v>`
 * lines).
 *
 * # Safety
 * `text` must be a valid nul-terminated string; `out` must be writable. On
 * MC_STATUS_OK the handle must be released with `mc_graph_free`.
 */
enum McStatus mc_graph_parse(const char *text, struct McGraph **out);

/**
 * # Safety
 * `g` must be a live handle from this library; `out` must be writable.
 */
enum McStatus mc_graph_vertex_count(const struct McGraph *g, size_t *out);

/**
 * # Safety
 * `g` must be a live handle from this library; `out` must be writable.
 */
enum McStatus mc_graph_edge_count(const struct McGraph *g, size_t *out);

/**
 * Serializes the graph into `buf` (nul-terminated). `*written` receives the
 * required size in bytes including the nul; when `cap` is too small the
 * status is MC_STATUS_BUFFER_TOO_SMALL and the buffer is untouched.
 *
 * # Safety
 * `g` must be a live handle; `buf` must point to `cap` writable bytes (it
 * may be null when `cap` is 0); `written` must be writable.
 */
enum McStatus mc_graph_write(const struct McGraph *g, char *buf, size_t cap, size_t *written);

/**
 * Releases a graph handle. Passing null is a no-op.
 *
 * # Safety
 * `g` must be null or a handle obtained from this library that has not been
 * freed yet.
 */
void mc_graph_free(struct McGraph *g);

/**
 * Decides whether the graph has a matching cut, with default resource
 * limits.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable. On MC_STATUS_OK the
 * verdict must be released with `mc_verdict_free`.
 */
enum McStatus mc_decide(const struct McGraph *g, struct McVerdict **out);

/**
 * Like `mc_decide` with explicit limits for the exact fallback: graphs with
 * at most `oracle_cap` vertices go to the brute-force oracle, larger ones
 * to a branching search allowed `node_budget` nodes.
 *
 * # Safety
 * Same contract as `mc_decide`.
 */
enum McStatus mc_decide_with_caps(const struct McGraph *g,
                                  size_t oracle_cap,
                                  uint64_t node_budget,
                                  struct McVerdict **out);

/**
 * # Safety
 * `v` must be a live verdict handle; `out` must be writable.
 */
enum McStatus mc_verdict_has_cut(const struct McVerdict *v, bool *out);

/**
 * Writes a pointer to the nul-terminated name of the procedure that settled
 * the verdict. The pointer stays valid until the verdict is freed.
 *
 * # Safety
 * `v` must be a live verdict handle; `out` must be writable.
 */
enum McStatus mc_verdict_method(const struct McVerdict *v, const char **out);

/**
 * Number of vertices on one side of the witness cut (side 0 = X, 1 = Y);
 * 0 when the verdict is no.
 *
 * # Safety
 * `v` must be a live verdict handle; `out` must be writable.
 */
enum McStatus mc_verdict_side_count(const struct McVerdict *v, uint32_t side, size_t *out);

/**
 * Copies one side of the witness cut into `buf` in ascending order.
 * `*written` receives the side length; when `cap` is too small nothing is
 * copied and the status is MC_STATUS_BUFFER_TOO_SMALL.
 *
 * # Safety
 * `v` must be a live verdict handle; `buf` must point to `cap` writable
 * `size_t` values (it may be null when `cap` is 0); `written` must be
 * writable.
 */
enum McStatus mc_verdict_copy_side(const struct McVerdict *v,
                                   uint32_t side,
                                   size_t *buf,
                                   size_t cap,
                                   size_t *written);

/**
 * Releases a verdict handle. Passing null is a no-op.
 *
 * # Safety
 * `v` must be null or a handle obtained from this library that has not been
 * freed yet.
 */
void mc_verdict_free(struct McVerdict *v);

/**
 * Checks a claimed cut: `out` receives true exactly when (X, Y) is a
 * matching cut of the graph. X and Y must partition the vertex set, else
 * MC_STATUS_INVALID_CUT.
 *
 * # Safety
 * `g` must be a live handle; `x`/`y` must point to `x_len`/`y_len` readable
 * `size_t` values (null allowed for empty sides); `out` must be writable.
 */
enum McStatus mc_verify_cut(const struct McGraph *g,
                            const size_t *x,
                            size_t x_len,
                            const size_t *y,
                            size_t y_len,
                            bool *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MATCHING_CUT_H */
