#ifndef TREEPERC_H
#define TREEPERC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Which truncation bound a value is, or `Exact` when nothing was dropped.
 */
typedef enum TpBoundKind {
  TP_BOUND_KIND_EXACT = 0,
  TP_BOUND_KIND_PATH_LOWER = 1,
  TP_BOUND_KIND_PATH_UPPER = 2,
  TP_BOUND_KIND_CUT_LOWER = 3,
  TP_BOUND_KIND_CUT_UPPER = 4,
} TpBoundKind;

/**
 * Result code of every fallible call.
 */
typedef enum TpStatus {
  TP_STATUS_OK = 0,
  TP_STATUS_NULL_POINTER = 1,
  TP_STATUS_INVALID_ARGUMENT = 2,
  TP_STATUS_BUDGET_EXCEEDED = 3,
  TP_STATUS_DOMAIN = 4,
  TP_STATUS_PARSE = 5,
  TP_STATUS_OVERFLOW = 6,
  TP_STATUS_INTERNAL = 7,
} TpStatus;

/**
 * Graded Betti table in the quotient convention.
 */
typedef struct TpBettiTable TpBettiTable;

/**
 * Polynomial in `x` and `t` with integer coefficients.
 */
typedef struct TpPoly TpPoly;

/**
 * Resource caps; pass NULL for the library defaults.
 */
typedef struct TpBudget {
  uint64_t max_terms;
  uint64_t max_coeff_bits;
} TpBudget;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version, a static NUL-terminated string.
 */
const char *tp_version(void);

/**
 * Message of the last failed call on this thread, or an empty string.
 * Valid until the next call into the library from this thread.
 */
const char *tp_last_error_message(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, not yet freed.
 */
void tp_string_free(char *s);

/**
 * Generating function of the path ideal of the `k`-ary tree of depth `n`.
 * A negative `m` computes it in full; otherwise only x-degrees up to `m`.
 *
 * # Safety
 * `budget` must be NULL or valid; `out` must be a valid pointer.
 */
enum TpStatus tp_path_gf(uint32_t k,
                         uint32_t n,
                         int64_t m,
                         const struct TpBudget *budget,
                         struct TpPoly **out);

/**
 * Generating function of the cut ideal; see `tp_path_gf`.
 *
 * # Safety
 * `budget` must be NULL or valid; `out` must be a valid pointer.
 */
enum TpStatus tp_cut_gf(uint32_t k,
                        uint32_t n,
                        int64_t m,
                        const struct TpBudget *budget,
                        struct TpPoly **out);

/**
 * Hilbert numerator `-G(-x, t)` of a generating function.
 *
 * # Safety
 * `gf` must be a live handle; `out` must be a valid pointer.
 */
enum TpStatus tp_poly_numerator(const struct TpPoly *gf, struct TpPoly **out);

/**
 * Number of nonzero terms.
 *
 * # Safety
 * `poly` must be NULL or a live handle.
 */
size_t tp_poly_term_count(const struct TpPoly *poly);

/**
 * JSON array of `{"x", "t", "c"}` terms, coefficients as decimal strings.
 *
 * # Safety
 * `poly` must be a live handle; `out` must be a valid pointer.
 */
enum TpStatus tp_poly_to_json(const struct TpPoly *poly, char **out);

/**
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be a valid pointer.
 */
enum TpStatus tp_poly_from_json(const char *json, struct TpPoly **out);

/**
 * # Safety
 * `poly` must be NULL or a handle not yet freed.
 */
void tp_poly_free(struct TpPoly *poly);

/**
 * Betti table read off a generating function.
 *
 * # Safety
 * `gf` must be a live handle; `out` must be a valid pointer.
 */
enum TpStatus tp_betti_from_gf(const struct TpPoly *gf, struct TpBettiTable **out);

/**
 * # Safety
 * `table` must be NULL or a live handle.
 */
uint32_t tp_betti_max_degree(const struct TpBettiTable *table);

/**
 * `beta_{i,j}` as a decimal string.
 *
 * # Safety
 * `table` must be a live handle; `out` must be a valid pointer.
 */
enum TpStatus tp_betti_get(const struct TpBettiTable *table, uint32_t i, uint32_t j, char **out);

/**
 * `beta_{i,j}` as an integer; `Overflow` if it does not fit.
 *
 * # Safety
 * `table` must be a live handle; `out` must be a valid pointer.
 */
enum TpStatus tp_betti_get_u64(const struct TpBettiTable *table,
                               uint32_t i,
                               uint32_t j,
                               uint64_t *out);

/**
 * CSV with header `i,j,beta`.
 *
 * # Safety
 * `table` must be a live handle; `out` must be a valid pointer.
 */
enum TpStatus tp_betti_to_csv(const struct TpBettiTable *table, char **out);

/**
 * JSON array of `{"i", "j", "beta"}` entries.
 *
 * # Safety
 * `table` must be a live handle; `out` must be a valid pointer.
 */
enum TpStatus tp_betti_to_json(const struct TpBettiTable *table, char **out);

/**
 * # Safety
 * `table` must be NULL or a handle not yet freed.
 */
void tp_betti_free(struct TpBettiTable *table);

/**
 * Exact `P_{k,n}(p)` as a reduced fraction string.
 *
 * # Safety
 * `p` must be a NUL-terminated string; `out` must be a valid pointer.
 */
enum TpStatus tp_percolation_exact(uint32_t k, uint32_t n, const char *p, char **out);

/**
 * `P_{k,n}(p)` in floating point.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum TpStatus tp_percolation_f64(uint32_t k, uint32_t n, double p, double *out);

/**
 * Percolation probability of the infinite `k`-ary tree.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum TpStatus tp_percolation_infinite(uint32_t k, double p, double *out);

/**
 * Truncated path bound on `P_{k,n}(p)`; odd `m` bounds from above.
 *
 * # Safety
 * `p` must be a NUL-terminated string; both outputs must be valid pointers.
 */
enum TpStatus tp_path_bound(uint32_t k,
                            uint32_t n,
                            uint32_t m,
                            const char *p,
                            char **out_value,
                            enum TpBoundKind *out_kind);

/**
 * Truncated cut bound on the failure probability at `q`.
 *
 * # Safety
 * `q` must be a NUL-terminated string; both outputs must be valid pointers.
 */
enum TpStatus tp_cut_bound(uint32_t k,
                           uint32_t n,
                           uint32_t m,
                           const char *q,
                           char **out_value,
                           enum TpBoundKind *out_kind);

/**
 * Threshold `q*_k` above which the depth-wise cut bounds diverge.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum TpStatus tp_q_star(uint32_t k, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TREEPERC_H */
