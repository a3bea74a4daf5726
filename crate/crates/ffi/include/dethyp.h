#ifndef DETHYP_H
#define DETHYP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  DH_STATUS_OK = 0,
  DH_STATUS_NULL_POINTER = 1,
  DH_STATUS_INVALID_ARGUMENT = 2,
  DH_STATUS_NOT_PRIME = 3,
  DH_STATUS_NO_ROOT_OF_UNITY = 4,
  DH_STATUS_SHAPE_MISMATCH = 5,
  DH_STATUS_DOMAIN = 6,
  DH_STATUS_PRECONDITION = 7,
  DH_STATUS_INVARIANT_VIOLATION = 8,
  DH_STATUS_BUFFER_TOO_SMALL = 9,
  DH_STATUS_CHECK_FAILED = 10,
  DH_STATUS_INTERNAL = 99,
} DhStatus;

/**
 * A field with a primitive root of unity `q` and its q-combinatorics.
 */
typedef struct DhQContext DhQContext;

/**
 * An `r`-tuple of `n x n` matrices over `F_p`.
 */
typedef struct DhTuple DhTuple;

/**
 * Message for the last failing call on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *dh_last_error(void);

/**
 * Smallest prime above `n`, additionally `= 1 mod n` when `need_root`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
DhStatus dh_find_prime(uint64_t n, bool need_root, uint64_t *out);

bool dh_is_prime(uint64_t n);

/**
 * Smallest primitive `n`-th root of unity in `F_p`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
DhStatus dh_primitive_root(uint64_t p, uint64_t n, uint64_t *out);

/**
 * Predicted generic rank of the differential:
 * `min(r n^2, (r - 1) n^2 + 1, binom(r + n, n) - 1)`.
 */
size_t dh_expected_rank(size_t n, size_t r);

/**
 * Creates a q-context for size `n`. With `p == 0` the smallest prime
 * `= 1 mod n` is used.
 *
 * # Safety
 * `out` must be a valid pointer. The handle is released by
 * [`dh_qcontext_free`].
 */
DhStatus dh_qcontext_new(size_t n, uint64_t p, DhQContext **out);

/**
 * # Safety
 * `ctx` must come from [`dh_qcontext_new`] and not be freed twice.
 */
void dh_qcontext_free(DhQContext *ctx);

/**
 * # Safety
 * All pointers must be valid; `ctx` must be live.
 */
DhStatus dh_qcontext_field(const DhQContext *ctx, uint64_t *p, uint64_t *q);

/**
 * `[d; a, b]_q`, zero when `a` or `b` is negative.
 *
 * # Safety
 * All pointers must be valid; `ctx` must be live.
 */
DhStatus dh_qbinom(const DhQContext *ctx, int64_t d, int64_t a, int64_t b, uint64_t *out);

/**
 * `[d; a, b, c]_q`.
 *
 * # Safety
 * All pointers must be valid; `ctx` must be live.
 */
DhStatus dh_qtrinom(const DhQContext *ctx,
                    int64_t d,
                    int64_t a,
                    int64_t b,
                    int64_t c,
                    uint64_t *out);

/**
 * Dimension of the kernel component of character `(e1, e2)` at the Weyl
 * triple built on `ctx`.
 *
 * # Safety
 * All pointers must be valid; `ctx` must be live.
 */
DhStatus dh_grading_dim_v(const DhQContext *ctx, int64_t e1, int64_t e2, size_t *out);

/**
 * Builds a tuple from `r * n * n` integers, matrix by matrix, each row-major.
 * Entries are reduced mod `p`.
 *
 * # Safety
 * `entries` must point to `len` readable values; `out` must be valid. The
 * handle is released by [`dh_tuple_free`].
 */
DhStatus dh_tuple_new(size_t n,
                      size_t r,
                      uint64_t p,
                      const int64_t *entries,
                      size_t len,
                      DhTuple **out);

/**
 * # Safety
 * `t` must come from [`dh_tuple_new`] and not be freed twice.
 */
void dh_tuple_free(DhTuple *t);

/**
 * Number of coefficients written by [`dh_tuple_char_coeffs`]: `binom(r + n, n)`.
 *
 * # Safety
 * All pointers must be valid; `t` must be live.
 */
DhStatus dh_tuple_coeff_count(const DhTuple *t, size_t *out);

/**
 * All coefficients of `det(x_0 I + sum_m x_m A_m)` in descending graded
 * lex order, starting with `x_0^n`. `written` always receives the required
 * length; if `cap` is smaller nothing else is written and
 * `BUFFER_TOO_SMALL` is returned.
 *
 * # Safety
 * `out` must have room for `cap` values; `t` and `written` must be valid.
 */
DhStatus dh_tuple_char_coeffs(const DhTuple *t, uint64_t *out, size_t cap, size_t *written);

/**
 * Rank of the differential of the coefficient map at `t`.
 *
 * # Safety
 * All pointers must be valid; `t` must be live.
 */
DhStatus dh_tuple_jacobian_rank(const DhTuple *t, size_t *out);

/**
 * Runs one of `rank`, `grading`, `qbinom`, `fiber`, `all` and hands back
 * the JSON report. `p == 0` selects the default prime. A report with a
 * failing check still returns its JSON, with status `CHECK_FAILED`.
 *
 * # Safety
 * `command` must be a NUL-terminated string; `json_out` must be valid.
 * The string is released by [`dh_string_free`].
 */
DhStatus dh_run_report(const char *command,
                       size_t n,
                       size_t r,
                       uint64_t p,
                       uint64_t seed,
                       size_t trials,
                       char **json_out);

/**
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void dh_string_free(char *s);

#endif  /* DETHYP_H */
