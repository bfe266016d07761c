#ifndef NESTOHEDRA_H
#define NESTOHEDRA_H

#include <stdbool.h>
#include <stddef.h>

/**
 * Result codes.
 */
typedef enum NhStatus {
  NH_STATUS_OK = 0,
  NH_STATUS_NULL_POINTER = 1,
  NH_STATUS_INVALID_UTF8 = 2,
  NH_STATUS_PARSE_ERROR = 3,
  NH_STATUS_VALIDATION_ERROR = 4,
  NH_STATUS_CAP_EXCEEDED = 5,
  NH_STATUS_MISMATCH = 6,
  NH_STATUS_PANIC = 7,
} NhStatus;

/**
 * Opaque simplicial complex.
 */
typedef struct NhComplex NhComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failing call on this thread; empty after success.
 * Valid until the next call into this library on the same thread.
 */
const char *nh_last_error_message(void);

/**
 * Library version, a static string.
 */
const char *nh_version(void);

/**
 * Parses `{"atoms": [...], "bases": [...]}` into a new handle.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a writable pointer.
 */
enum NhStatus nh_complex_from_json(const char *json, struct NhComplex **out);

/**
 * Releases a handle; null is ignored.
 *
 * # Safety
 * `c` must come from this library and not be used afterwards.
 */
void nh_complex_free(struct NhComplex *c);

/**
 * Releases a string returned by this library; null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void nh_string_free(char *s);

/**
 * # Safety
 * `c` must be a live handle and `out` writable.
 */
enum NhStatus nh_complex_num_bases(const struct NhComplex *c, size_t *out);

/**
 * # Safety
 * `c` must be a live handle and `out` writable.
 */
enum NhStatus nh_complex_num_vertices(const struct NhComplex *c, size_t *out);

/**
 * Writes up to `cap` entries of the f-vector into `buf` and its full
 * length into `len`. Pass `cap = 0` to query the length.
 *
 * # Safety
 * `buf` must hold `cap` entries (it may be null when `cap` is 0) and `len`
 * must be writable.
 */
enum NhStatus nh_complex_fvector(const struct NhComplex *c, size_t *buf, size_t cap, size_t *len);

/**
 * # Safety
 * `c` must be a live handle and `out` writable.
 */
enum NhStatus nh_complex_to_json(const struct NhComplex *c, char **out);

/**
 * `Et(c, d)` for a flat building set given as a JSON array of sums.
 *
 * # Safety
 * `c` must be a live handle, `flat_json` a NUL-terminated string and `out`
 * writable.
 */
enum NhStatus nh_complex_et(const struct NhComplex *c,
                            const char *flat_json,
                            struct NhComplex **out);

/**
 * Nested complex of an atomic building set given as a JSON array of
 * label arrays.
 *
 * # Safety
 * As for [`nh_complex_et`].
 */
enum NhStatus nh_complex_nested(const struct NhComplex *c,
                                const char *building_set_json,
                                struct NhComplex **out);

/**
 * Writes the faithfulness verdict. A witness is available as the last
 * error message when the verdict is false.
 *
 * # Safety
 * `c` must be a live handle and `out` writable.
 */
enum NhStatus nh_complex_is_faithful(const struct NhComplex *c, bool *out);

/**
 * Rays and cones as JSON; fails with a validation error when the complex
 * is not a fan.
 *
 * # Safety
 * `c` must be a live handle and `out` writable.
 */
enum NhStatus nh_fan_export(const struct NhComplex *c, char **out);

/**
 * Runs a pipeline spec and writes the report JSON. When the paths of a
 * `"path": "all"` run disagree the report is still written and the status
 * is `Mismatch`.
 *
 * # Safety
 * `spec_json` must be a NUL-terminated string and `out` writable.
 */
enum NhStatus nh_run_pipeline(const char *spec_json, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NESTOHEDRA_H */
