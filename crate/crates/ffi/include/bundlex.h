#ifndef BUNDLEX_H
#define BUNDLEX_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum {
  BX_STATUS_OK = 0,
  BX_STATUS_NULL_POINTER = 1,
  BX_STATUS_INVALID_UTF8 = 2,
  BX_STATUS_PARSE_ERROR = 3,
  BX_STATUS_INVALID_INPUT = 4,
  BX_STATUS_EXTENSION_FAILED = 5,
  BX_STATUS_PANIC = 6,
} BxStatus;

/**
 * An extended bundle.
 */
typedef struct BxExtension BxExtension;

/**
 * A verification report.
 */
typedef struct BxReport BxReport;

/**
 * A validated bundle spec.
 */
typedef struct BxSpec BxSpec;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next `bx_*` call on this thread.
 */
const char *bx_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *bx_version(void);

/**
 * Parses a spec file (JSON text).
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
BxStatus bx_spec_from_json(const char *json, BxSpec **out);

/**
 * A built-in example (`"skoda"` or `"demailly"`); `k` is used by demailly
 * only and must be at least 2 there.
 *
 * # Safety
 * `name` must be a NUL-terminated string; `out` must be writable.
 */
BxStatus bx_spec_builtin(const char *name, uint32_t k, BxSpec **out);

/**
 * Serializes a spec in the spec-file format.
 *
 * # Safety
 * `spec` must be a live handle; `out` must be writable.
 */
BxStatus bx_spec_to_json(const BxSpec *spec, char **out);

/**
 * Number of holes of the spec's domain, or 0 for a null handle.
 *
 * # Safety
 * `spec` must be a live handle or null.
 */
uintptr_t bx_spec_num_holes(const BxSpec *spec);

/**
 * # Safety
 * `spec` must come from a `bx_spec_*` constructor and not be freed already.
 */
void bx_spec_free(BxSpec *spec);

/**
 * Extends the bundle over every hole and over infinity.
 *
 * # Safety
 * `spec` must be a live handle; `out` must be writable.
 */
BxStatus bx_extend(const BxSpec *spec, BxExtension **out);

/**
 * # Safety
 * `ext` must be a live handle; `out` must be writable.
 */
BxStatus bx_extension_to_json(const BxExtension *ext, char **out);

/**
 * # Safety
 * `ext` must come from [`bx_extend`] and not be freed already.
 */
void bx_extension_free(BxExtension *ext);

/**
 * Samples every gluing identity. A failing verification is not an error:
 * the call returns `BX_STATUS_OK` and [`bx_report_pass`] is false.
 *
 * # Safety
 * `ext` must be a live handle; `out` must be writable.
 */
BxStatus bx_verify(const BxExtension *ext,
                   uintptr_t samples,
                   double tol,
                   uint64_t seed,
                   BxReport **out);

/**
 * Overall verdict; false for a null handle.
 *
 * # Safety
 * `report` must be a live handle or null.
 */
bool bx_report_pass(const BxReport *report);

/**
 * Largest residual over the records checked at the report tolerance; NaN
 * for a null handle.
 *
 * # Safety
 * `report` must be a live handle or null.
 */
double bx_report_max_residual(const BxReport *report);

/**
 * # Safety
 * `report` must be a live handle; `out` must be writable.
 */
BxStatus bx_report_to_json(const BxReport *report, char **out);

/**
 * # Safety
 * `report` must come from [`bx_verify`] and not be freed already.
 */
void bx_report_free(BxReport *report);

/**
 * # Safety
 * `s` must come from a `bx_*_to_json` call and not be freed already.
 */
void bx_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BUNDLEX_H */
