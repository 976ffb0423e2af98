/* Generated by cbindgen. Do not edit. */

#ifndef GRASSMANN_CODES_H
#define GRASSMANN_CODES_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum GcStatus {
  GC_STATUS_OK = 0,
  GC_STATUS_NULL_POINTER = 1,
  GC_STATUS_INVALID_UTF8 = 2,
  GC_STATUS_PARSE = 3,
  GC_STATUS_INVALID_ARGUMENT = 4,
  GC_STATUS_NOT_IN_CLASS = 5,
  /**
   * A construction found nothing (no step, no lambda, path failed).
   */
  GC_STATUS_NOT_FOUND = 6,
  /**
   * The request exceeds an enumeration or exact-computation cap.
   */
  GC_STATUS_TOO_LARGE = 7,
  GC_STATUS_OUT_OF_RANGE = 8,
  GC_STATUS_INTERNAL = 9,
} GcStatus;

/**
 * An `[n,k]` linear code.
 */
typedef struct GcCode GcCode;

/**
 * A sequence of codes, each adjacent to the next.
 */
typedef struct GcPath GcPath;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failing call on this thread. Valid until the next
 * failing call on the same thread; empty if nothing has failed.
 */
const char *gc_last_error_message(void);

/**
 * Parses the text generator-matrix format ("q n k" header, k rows).
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum GcStatus gc_code_parse(const char *text, struct GcCode **out);

/**
 * # Safety
 * `code` must come from this library and not have been freed; null is ignored.
 */
void gc_code_free(struct GcCode *code);

/**
 * # Safety
 * `code` must be a live handle; out pointers must be valid.
 */
enum GcStatus gc_code_dims(const struct GcCode *code, uint32_t *q, size_t *n, size_t *k);

/**
 * Largest `t` with every `t` columns of a generator independent.
 *
 * # Safety
 * `code` must be a live handle; `out` must be valid.
 */
enum GcStatus gc_code_t_max(const struct GcCode *code, size_t *out);

/**
 * Minimum distance of the dual code, or -1 when the dual is the zero code.
 *
 * # Safety
 * `code` must be a live handle; `out` must be valid.
 */
enum GcStatus gc_code_dual_distance(const struct GcCode *code, int64_t *out);

/**
 * Whether the code has dual distance at least `t + 1`.
 *
 * # Safety
 * `code` must be a live handle; `out` must be valid.
 */
enum GcStatus gc_code_is_in_class(const struct GcCode *code, size_t t, bool *out);

/**
 * Canonical text form; free the string with [`gc_string_free`].
 *
 * # Safety
 * `code` must be a live handle; `out` must be valid.
 */
enum GcStatus gc_code_to_text(const struct GcCode *code, char **out);

/**
 * # Safety
 * `s` must come from this library and not have been freed; null is ignored.
 */
void gc_string_free(char *s);

/**
 * The `[n,k]` Vandermonde code on the first `n` elements of GF(q).
 *
 * # Safety
 * `out` must be valid.
 */
enum GcStatus gc_vandermonde_mds(uint32_t q, size_t n, size_t k, struct GcCode **out);

/**
 * An equivalent code meeting `code` in dimension `max(2k - n, 0)`.
 * `lambda` receives the scaling constant used (may be null).
 *
 * # Safety
 * `code` must be a live handle; `out` must be valid.
 */
enum GcStatus gc_opposite_code(const struct GcCode *code,
                               size_t t,
                               struct GcCode **out,
                               uint32_t *lambda);

/**
 * A geodesic from `x` to `y` inside the codes of dual distance `>= t + 1`.
 *
 * # Safety
 * `x` and `y` must be live handles; `out` must be valid.
 */
enum GcStatus gc_geodesic_path(const struct GcCode *x,
                               const struct GcCode *y,
                               size_t t,
                               struct GcPath **out);

/**
 * Number of codes on the path (its length plus one).
 *
 * # Safety
 * `path` must be a live handle; `out` must be valid.
 */
enum GcStatus gc_path_vertex_count(const struct GcPath *path, size_t *out);

/**
 * A copy of the `i`-th code on the path, to be freed with [`gc_code_free`].
 *
 * # Safety
 * `path` must be a live handle; `out` must be valid.
 */
enum GcStatus gc_path_vertex(const struct GcPath *path, size_t i, struct GcCode **out);

/**
 * # Safety
 * `path` must come from this library and not have been freed; null is ignored.
 */
void gc_path_free(struct GcPath *path);

/**
 * Verifies one instance `(q, n, k, t)` and returns its report as JSON;
 * free the string with [`gc_string_free`]. Zero caps select the defaults.
 *
 * # Safety
 * `out` must be valid.
 */
enum GcStatus gc_sweep_instance_json(uint32_t q,
                                     size_t n,
                                     size_t k,
                                     size_t t,
                                     uint64_t max_vertices,
                                     uint64_t max_pairs,
                                     char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GRASSMANN_CODES_H */
