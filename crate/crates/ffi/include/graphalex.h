#ifndef GRAPHALEX_H
#define GRAPHALEX_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum GaStatus {
  GA_STATUS_OK = 0,
  GA_STATUS_NULL_POINTER = 1,
  GA_STATUS_INVALID_UTF8 = 2,
  GA_STATUS_PARSE = 3,
  GA_STATUS_VALIDATION = 4,
  GA_STATUS_UNSUPPORTED = 5,
  GA_STATUS_INTEGRITY = 6,
  /**
   * The computation finished but its check did not hold; the output is still written.
   */
  GA_STATUS_CHECK_FAILED = 7,
  GA_STATUS_INTERNAL = 8,
} GaStatus;

/**
 * A parsed and validated diagram.
 */
typedef struct GaDiagram GaDiagram;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses and validates a `morse v1` document.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a writable pointer slot.
 * On success `*out` holds a handle to release with [`ga_diagram_free`].
 */
enum GaStatus ga_diagram_parse(const char *text, struct GaDiagram **out);

/**
 * # Safety
 * `d` must be null or a handle from [`ga_diagram_parse`] not yet freed.
 */
void ga_diagram_free(struct GaDiagram *d);

/**
 * The gl(1|1) invariant as JSON; `planar` selects the edge-state sum.
 *
 * # Safety
 * `d` must be a live handle and `out` a writable pointer slot.
 */
enum GaStatus ga_gl11(const struct GaDiagram *d, bool planar, char **out);

/**
 * The Alexander polynomial (unit normal form in `u = t^(1/2)`) as JSON.
 *
 * # Safety
 * `d` must be a live handle and `out` a writable pointer slot.
 */
enum GaStatus ga_alexander(const struct GaDiagram *d, char **out);

/**
 * Compares the specialized Alexander polynomial with gl(1|1). Returns
 * `GA_STATUS_CHECK_FAILED` (with the report written) when they differ.
 *
 * # Safety
 * `d` must be a live handle and `out` a writable pointer slot.
 */
enum GaStatus ga_compare(const struct GaDiagram *d, char **out);

/**
 * Runs relation checks at every level each relation has. `ids` is a
 * comma-separated list of relation ids, or null for all of them.
 *
 * # Safety
 * `ids` must be null or NUL-terminated; `out` a writable pointer slot.
 */
enum GaStatus ga_relations(const char *ids, uint32_t samples, uint64_t seed, char **out);

/**
 * Message for the last failure on this thread (empty after a success). The
 * pointer stays valid until the next call into this library on the same thread.
 */
const char *ga_last_error_message(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void ga_string_free(char *s);

/**
 * Static version string.
 */
const char *ga_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GRAPHALEX_H */
