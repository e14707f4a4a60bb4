#ifndef CATCONVEX_H
#define CATCONVEX_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Outcome of a call. `Ok` and `Negative` mirror the CLI's exit codes 0 and 1.
 */
typedef enum CcStatus {
  CC_STATUS_OK = 0,
  CC_STATUS_NEGATIVE = 1,
  CC_STATUS_INPUT_ERROR = 2,
  CC_STATUS_INTERNAL_ERROR = 3,
  CC_STATUS_NULL_POINTER = 4,
  CC_STATUS_INVALID_UTF8 = 5,
} CcStatus;

/**
 * A parsed instance.
 */
typedef struct CcInstance CcInstance;

/**
 * Parses an instance document. On success `*out` owns a new handle.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a writable pointer.
 */
enum CcStatus cc_instance_parse(const char *json, struct CcInstance **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `inst` must come from [`cc_instance_parse`] and not be used afterwards.
 */
void cc_instance_free(struct CcInstance *inst);

/**
 * Vertex and edge counts.
 *
 * # Safety
 * `inst` must be a live handle; each output pointer may be null to skip it.
 */
enum CcStatus cc_instance_counts(const struct CcInstance *inst,
                                 size_t *x_count,
                                 size_t *y_count,
                                 size_t *edge_count);

/**
 * Recognition. `Ok` with the representation, or `Negative` with the reason.
 *
 * # Safety
 * `inst` must be a live handle and `out` a writable pointer.
 */
enum CcStatus cc_recognize(const struct CcInstance *inst, char **out);

/**
 * List 3-coloring, using the embedded caterpillar when there is one.
 * `Ok` with the colors, or `Negative` when infeasible.
 *
 * # Safety
 * `inst` must be a live handle and `out` a writable pointer.
 */
enum CcStatus cc_color(const struct CcInstance *inst, char **out);

/**
 * Checks a caterpillar fragment against the instance graph.
 *
 * # Safety
 * `inst` must be a live handle, `candidate` NUL-terminated, `out` writable.
 */
enum CcStatus cc_verify_representation(const struct CcInstance *inst,
                                       const char *candidate,
                                       char **out);

/**
 * Checks a coloring fragment; missing lists count as {1,2,3}.
 *
 * # Safety
 * `inst` must be a live handle, `candidate` NUL-terminated, `out` writable.
 */
enum CcStatus cc_verify_coloring(const struct CcInstance *inst, const char *candidate, char **out);

/**
 * The message of the last failed call on this thread, or null. Valid until
 * the next call on the same thread.
 */
const char *cc_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void cc_string_free(char *s);

/**
 * Library version, statically allocated.
 */
const char *cc_version(void);

#endif  /* CATCONVEX_H */
