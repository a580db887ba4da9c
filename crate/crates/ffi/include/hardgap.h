#ifndef HARDGAP_H
#define HARDGAP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HgStatus {
  HG_STATUS_OK = 0,
  HG_STATUS_NULL_POINTER = 1,
  HG_STATUS_PARAMETER_QUANTIZATION = 2,
  HG_STATUS_DOMAIN = 3,
  HG_STATUS_INVALID_ARGUMENT = 4,
  HG_STATUS_LOWER_PARAMETER_POLE = 5,
  HG_STATUS_CANCELLATION = 6,
  HG_STATUS_NON_CONVERGENCE = 7,
  HG_STATUS_BRANCH_INCONSISTENCY = 8,
  HG_STATUS_RESOURCE = 9,
  HG_STATUS_PANIC = 10,
} HgStatus;

typedef enum HgAsymptoticVariant {
  HG_ASYMPTOTIC_VARIANT_PU = 0,
  HG_ASYMPTOTIC_VARIANT_MG = 1,
  HG_ASYMPTOTIC_VARIANT_LIMIT = 2,
} HgAsymptoticVariant;

/**
 * Opaque evaluation context.
 */
typedef struct HgContext HgContext;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * New context with tolerance `1e-12`. Free with [`hg_context_free`].
 */
struct HgContext *hg_context_new(void);

/**
 * # Safety
 * `ctx` must be null or a live pointer from [`hg_context_new`].
 */
void hg_context_free(struct HgContext *ctx);

/**
 * # Safety
 * `ctx` must be null or a live pointer from [`hg_context_new`].
 */
enum HgStatus hg_set_tolerance(struct HgContext *ctx, double tol);

/**
 * Message of the last failed call, or null. Owned by the context; valid
 * until the next call on it.
 *
 * # Safety
 * `ctx` must be null or a live pointer from [`hg_context_new`].
 */
const char *hg_last_error(const struct HgContext *ctx);

/**
 * Static name of a status code.
 */
const char *hg_status_name(enum HgStatus status);

/**
 * Hard-edge `E(0;(0,s))`; requires `βa/2` to be a nonnegative integer.
 *
 * # Safety
 * `ctx` must be a live context and `out` a valid `double*`.
 */
enum HgStatus hg_exact_e0_hard(struct HgContext *ctx, double s, double a, double beta, double *out);

/**
 * Hard-edge `E(n;(0,s))`.
 *
 * # Safety
 * `ctx` must be a live context and `out` a valid `double*`.
 */
enum HgStatus hg_exact_e_hard(struct HgContext *ctx,
                              double s,
                              double a,
                              double beta,
                              size_t n,
                              double *out);

/**
 * `E(0;(0,x))` for `big_n` eigenvalues, weight `λ^{βa/2} e^{-βλ/2}`.
 *
 * # Safety
 * `ctx` must be a live context and `out` a valid `double*`.
 */
enum HgStatus hg_exact_e0_finite_n(struct HgContext *ctx,
                                   double x,
                                   double a,
                                   double beta,
                                   size_t big_n,
                                   double *out);

/**
 * Natural log of the large-`s` form of `E(n;(0,s))`.
 *
 * # Safety
 * `ctx` must be a live context and `out_ln` a valid `double*`.
 */
enum HgStatus hg_asymptotic_ln_e(struct HgContext *ctx,
                                 double s,
                                 double a,
                                 double beta,
                                 double n,
                                 enum HgAsymptoticVariant variant,
                                 double *out_ln);

/**
 * Natural log of the large-`N` value of `E(0;(0,4N s̃))`.
 *
 * # Safety
 * `ctx` must be a live context and `out_ln` a valid `double*`.
 */
enum HgStatus hg_large_deviation_ln_e0(struct HgContext *ctx,
                                       size_t big_n,
                                       double s_tilde,
                                       double a,
                                       double beta,
                                       double *out_ln);

/**
 * Monte Carlo estimate of `E(n;(0,s))` at matrix size `big_n`, interval
 * `(0, s/(4N))`.
 *
 * # Safety
 * `ctx` must be a live context; `out_p` and `out_stderr` valid `double*`.
 */
enum HgStatus hg_mc_estimate_gap(struct HgContext *ctx,
                                 double beta,
                                 double a,
                                 size_t big_n,
                                 double s,
                                 size_t n,
                                 size_t samples,
                                 uint64_t seed,
                                 double *out_p,
                                 double *out_stderr);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HARDGAP_H */
