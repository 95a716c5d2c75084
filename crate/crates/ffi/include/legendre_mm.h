#ifndef LEGENDRE_MM_H
#define LEGENDRE_MM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes. Zero is success; the rest mirror the library's error kinds.
 */
typedef enum LmmStatus {
  LMM_STATUS_OK = 0,
  LMM_STATUS_PRECONDITION = 1,
  LMM_STATUS_DOMAIN = 2,
  LMM_STATUS_INVALID_INPUT = 3,
  LMM_STATUS_FORMAT = 4,
  LMM_STATUS_PRECISION = 5,
  LMM_STATUS_DB_INCOMPLETE = 6,
  LMM_STATUS_VERIFICATION = 7,
  LMM_STATUS_IO = 8,
  LMM_STATUS_NULL_POINTER = 9,
  LMM_STATUS_UTF8 = 10,
  LMM_STATUS_INDEX_OUT_OF_RANGE = 11,
  LMM_STATUS_PANIC = 12,
} LmmStatus;

/**
 * A nonnegative real held as exp(exact expression).
 */
typedef struct LmmBound LmmBound;

/**
 * A parsed curve specification.
 */
typedef struct LmmCurve LmmCurve;

/**
 * The outcome of a section scan for one order N.
 */
typedef struct LmmScan LmmScan;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failure on this thread, or NULL. Valid until the next call.
 */
const char *lmm_last_error(void);

/**
 * Release a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void lmm_string_free(char *s);

/**
 * Parse a curve specification from JSON text.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum LmmStatus lmm_curve_from_json(const char *json, struct LmmCurve **out);

/**
 * # Safety
 * `c` must be NULL or a handle from `lmm_curve_from_json`.
 */
void lmm_curve_free(struct LmmCurve *c);

/**
 * Torsion points of exact order `n` on the curve, over every fiber.
 *
 * # Safety
 * `curve` must be a live handle; `out` must be writable.
 */
enum LmmStatus lmm_scan_section(const struct LmmCurve *curve, uint64_t n, struct LmmScan **out);

/**
 * # Safety
 * `s` must be NULL or a handle from `lmm_scan_section`.
 */
void lmm_scan_free(struct LmmScan *s);

/**
 * Whether the curve meets the N-torsion of the generic fiber in a whole component.
 *
 * # Safety
 * `scan` must be a live handle; `out` must be writable.
 */
enum LmmStatus lmm_scan_is_generic(const struct LmmScan *scan, bool *out);

/**
 * Number of isolated hits.
 *
 * # Safety
 * `scan` must be a live handle; `out` must be writable.
 */
enum LmmStatus lmm_scan_hit_count(const struct LmmScan *scan, size_t *out);

/**
 * Order of hit `i`.
 *
 * # Safety
 * `scan` must be a live handle; `out` must be writable.
 */
enum LmmStatus lmm_scan_hit_order(const struct LmmScan *scan, size_t i, uint64_t *out);

/**
 * Hit `i` as a JSON record. Free the string with `lmm_string_free`.
 *
 * # Safety
 * `scan` must be a live handle; `out` must be writable.
 */
enum LmmStatus lmm_scan_hit_json(const struct LmmScan *scan, size_t i, char **out);

/**
 * Parse a bound written as a rational ≥ 1 or as `exp(<expression>)`.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum LmmStatus lmm_bound_parse(const char *text, struct LmmBound **out);

/**
 * # Safety
 * `b` must be NULL or a bound handle from this library.
 */
void lmm_bound_free(struct LmmBound *b);

/**
 * max{(3·C·D2)^4, exp(2^(18/5))}.
 *
 * # Safety
 * `c` must be a live handle; `out` must be writable.
 */
enum LmmStatus lmm_bound_mm_curve(const struct LmmBound *c, uint64_t d2, struct LmmBound **out);

/**
 * Natural logarithm as a double; -inf for the zero bound.
 *
 * # Safety
 * `b` must be a live handle; `out` must be writable.
 */
enum LmmStatus lmm_bound_ln(const struct LmmBound *b, double *out);

/**
 * Certified comparison a ≤ b.
 *
 * # Safety
 * `a` and `b` must be live handles; `out` must be writable.
 */
enum LmmStatus lmm_bound_le(const struct LmmBound *a, const struct LmmBound *b, bool *out);

/**
 * Exact text `exp(...)`. Free with `lmm_string_free`.
 *
 * # Safety
 * `b` must be a live handle; `out` must be writable.
 */
enum LmmStatus lmm_bound_to_string(const struct LmmBound *b, char **out);

/**
 * A_n and B_n as text. Free both strings with `lmm_string_free`.
 *
 * # Safety
 * `a_out` and `b_out` must be writable.
 */
enum LmmStatus lmm_divpoly(uint32_t n, char **a_out, char **b_out);

/**
 * Scan orders 2..=max_n, re-certify every hit, and compare each order with the curve
 * bound for constant `c`. All hits are treated as lying on fibers isogenous to E0.
 *
 * # Safety
 * `curve` and `c` must be live handles; `passed` must be writable.
 */
enum LmmStatus lmm_verify(const struct LmmCurve *curve,
                          const struct LmmBound *c,
                          uint64_t max_n,
                          bool *passed);

/**
 * Run the command-line tool in-process. `argv` excludes the program name.
 * Output strings are freed with `lmm_string_free`.
 *
 * # Safety
 * `argv` must hold `argc` NUL-terminated strings; the out-pointers must be writable.
 */
enum LmmStatus lmm_cli_run(size_t argc,
                           const char *const *argv,
                           int32_t *exit_code,
                           char **stdout_out,
                           char **stderr_out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LEGENDRE_MM_H */
