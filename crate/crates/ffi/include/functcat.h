#ifndef FUNCTCAT_H
#define FUNCTCAT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every entry point.
 */
typedef enum FcStatus {
  FC_STATUS_OK = 0,
  FC_STATUS_NULL_POINTER = 1,
  FC_STATUS_INVALID_UTF8 = 2,
  FC_STATUS_PARSE_ERROR = 3,
  FC_STATUS_SEMANTIC_ERROR = 4,
  FC_STATUS_UNKNOWN_NAME = 5,
  FC_STATUS_CRITERIA_MISMATCH = 6,
  FC_STATUS_BUFFER_TOO_SMALL = 7,
  FC_STATUS_PANIC = 8,
} FcStatus;

/**
 * A parsed and built instance.
 */
typedef struct FcInstance FcInstance;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses instance text. On success `*out` owns a new handle.
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` a valid pointer.
 */
enum FcStatus fc_instance_parse(const char *text, struct FcInstance **out);

/**
 * Loads a shipped fixture by name (`"z6"` or `"z6.cat"`).
 *
 * # Safety
 * `name` must be a nul-terminated string and `out` a valid pointer.
 */
enum FcStatus fc_instance_fixture(const char *name, struct FcInstance **out);

/**
 * Releases a handle; null is ignored.
 *
 * # Safety
 * `inst` must come from this library and not be used afterwards.
 */
void fc_instance_free(struct FcInstance *inst);

/**
 * Number of vertices.
 *
 * # Safety
 * Pointers must be valid.
 */
enum FcStatus fc_vertex_count(const struct FcInstance *inst, size_t *out);

/**
 * Global dimension, or -1 when it exceeds `bound`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum FcStatus fc_global_dimension(const struct FcInstance *inst, size_t bound, int64_t *out);

/**
 * Idempotency level (at most `max_k`) of the trace ideal of a bundle.
 * `bundle` is a declared bundle name or a comma-separated vertex list.
 *
 * # Safety
 * Pointers must be valid and `bundle` nul-terminated.
 */
enum FcStatus fc_idempotency_level(const struct FcInstance *inst,
                                   const char *bundle,
                                   size_t max_k,
                                   size_t *out);

/**
 * Writes `dim Ext^i(from, to)` for `i = 0..=max_i` into `dims`, which must
 * hold `max_i + 1` entries.
 *
 * # Safety
 * Pointers must be valid; `dims` must point to `len` writable entries.
 */
enum FcStatus fc_ext_dims(const struct FcInstance *inst,
                          const char *from,
                          const char *to,
                          size_t max_i,
                          size_t *dims,
                          size_t len);

/**
 * Copies the calling thread's last error message into `buf` (nul-terminated,
 * truncated to `len`). Returns the full message length, 0 when there is none.
 *
 * # Safety
 * `buf` must point to `len` writable bytes or be null.
 */
size_t fc_last_error(char *buf, size_t len);

/**
 * Library version as a static nul-terminated string.
 */
const char *fc_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FUNCTCAT_H */
