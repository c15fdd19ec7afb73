#ifndef GARSIDE_H
#define GARSIDE_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes; `Ok` is zero.
 */
typedef enum GarsideStatus {
  GARSIDE_STATUS_OK = 0,
  GARSIDE_STATUS_NULL_POINTER = 1,
  GARSIDE_STATUS_INVALID_UTF8 = 2,
  GARSIDE_STATUS_UNKNOWN_FAMILY = 3,
  GARSIDE_STATUS_RANK_OUT_OF_RANGE = 4,
  GARSIDE_STATUS_MALFORMED_MATRIX = 5,
  GARSIDE_STATUS_REDUCIBLE = 6,
  GARSIDE_STATUS_NOT_FINITE_TYPE = 7,
  GARSIDE_STATUS_INVALID_ATOM = 8,
  GARSIDE_STATUS_MALFORMED_WORD = 9,
  GARSIDE_STATUS_MIXED_SYSTEMS = 10,
  GARSIDE_STATUS_PRECONDITION = 11,
  GARSIDE_STATUS_BUDGET_EXCEEDED = 12,
  GARSIDE_STATUS_CERTIFICATE_FAILED = 13,
  GARSIDE_STATUS_NOT_FOUND = 14,
  GARSIDE_STATUS_PANIC = 15,
} GarsideStatus;

/**
 * An element of an Artin–Tits group, in left normal form.
 */
typedef struct GarsideElement GarsideElement;

/**
 * An Artin–Tits system of spherical type.
 */
typedef struct GarsideSystem GarsideSystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failing call on this thread; empty if none. The
 * pointer stays valid until the next failing call on this thread.
 */
const char *garside_last_error(void);

/**
 * Builds a system from a name such as `A4`, `E8` or `I2(7)`.
 *
 * # Safety
 * `spec` must be a valid NUL-terminated string and `out` writable.
 */
enum GarsideStatus garside_system_new(const char *spec, struct GarsideSystem **out);

/**
 * # Safety
 * `sys` must come from [`garside_system_new`] and not be used afterwards.
 */
void garside_system_free(struct GarsideSystem *sys);

/**
 * Number of atoms; 0 for a null handle.
 *
 * # Safety
 * `sys` must be null or a live system handle.
 */
size_t garside_system_rank(const struct GarsideSystem *sys);

/**
 * Parses a signed word such as `"1 2 -3"` (1-based atoms).
 *
 * # Safety
 * `sys` must be live, `word` a valid string and `out` writable.
 */
enum GarsideStatus garside_element_parse(const struct GarsideSystem *sys,
                                         const char *word,
                                         struct GarsideElement **out);

/**
 * `Δ^k`.
 *
 * # Safety
 * `sys` must be live and `out` writable.
 */
enum GarsideStatus garside_element_delta_power(const struct GarsideSystem *sys,
                                               int64_t k,
                                               struct GarsideElement **out);

/**
 * # Safety
 * `g` must come from this library and not be used afterwards.
 */
void garside_element_free(struct GarsideElement *g);

/**
 * `a·b`; both must belong to the same system.
 *
 * # Safety
 * `a` and `b` must be live and `out` writable.
 */
enum GarsideStatus garside_element_multiply(const struct GarsideElement *a,
                                            const struct GarsideElement *b,
                                            struct GarsideElement **out);

/**
 * # Safety
 * `g` must be live and `out` writable.
 */
enum GarsideStatus garside_element_inverse(const struct GarsideElement *g,
                                           struct GarsideElement **out);

/**
 * `Δ^{-p} g Δ^p`.
 *
 * # Safety
 * `g` must be live and `out` writable.
 */
enum GarsideStatus garside_element_tau(const struct GarsideElement *g,
                                       int64_t p,
                                       struct GarsideElement **out);

/**
 * The mirror image of `g`.
 *
 * # Safety
 * `g` must be live and `out` writable.
 */
enum GarsideStatus garside_element_reverse(const struct GarsideElement *g,
                                           struct GarsideElement **out);

/**
 * Writes `inf`, `sup` and the canonical length; any pointer may be null.
 *
 * # Safety
 * `g` must be live; non-null out-pointers must be writable.
 */
enum GarsideStatus garside_element_bounds(const struct GarsideElement *g,
                                          int64_t *inf,
                                          int64_t *sup,
                                          uint64_t *canonical_length);

/**
 * Sets `*equal` to whether the two elements coincide.
 *
 * # Safety
 * `a` and `b` must be live and `equal` writable.
 */
enum GarsideStatus garside_element_equal(const struct GarsideElement *a,
                                         const struct GarsideElement *b,
                                         bool *equal);

/**
 * Human-readable normal form, e.g. `Δ^1 · (1 2)(2)`.
 *
 * # Safety
 * `g` must be live and `out` writable.
 */
enum GarsideStatus garside_element_render(const struct GarsideElement *g, char **out);

/**
 * Normal form as a JSON object.
 *
 * # Safety
 * `g` must be live and `out` writable.
 */
enum GarsideStatus garside_element_to_json(const struct GarsideElement *g, char **out);

/**
 * Spectral growth rate with respect to the simple elements.
 *
 * # Safety
 * `sys` must be live and `out` writable.
 */
enum GarsideStatus garside_growth_rate(const struct GarsideSystem *sys, double *out);

/**
 * Runs the command-line program on `argv[0..argc]` (without the program
 * name) and returns its exit code and output streams.
 *
 * # Safety
 * `argv` must hold `argc` valid strings; all out-pointers must be writable.
 */
enum GarsideStatus garside_cli_run(size_t argc,
                                   const char *const *argv,
                                   int32_t *exit_code,
                                   char **stdout_text,
                                   char **stderr_text);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void garside_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GARSIDE_H */
