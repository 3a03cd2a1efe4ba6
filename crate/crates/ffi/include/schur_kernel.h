#ifndef SCHUR_KERNEL_H
#define SCHUR_KERNEL_H

/* Generated by cbindgen from crates/ffi/src; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SkStatus {
  SK_STATUS_OK = 0,
  SK_STATUS_NULL_POINTER = 1,
  SK_STATUS_INVALID_ARGUMENT = 2,
  SK_STATUS_BUFFER_TOO_SMALL = 3,
  SK_STATUS_DIMENSION = 4,
  SK_STATUS_SINGULAR = 5,
  SK_STATUS_CONVERGENCE = 6,
  SK_STATUS_INDEX = 7,
  SK_STATUS_DOMAIN = 8,
  SK_STATUS_TRUNCATION = 9,
  SK_STATUS_RESOURCE = 10,
  SK_STATUS_PRECONDITION = 11,
  SK_STATUS_CONFIG = 12,
  SK_STATUS_IO = 13,
  SK_STATUS_PANIC = 14,
} SkStatus;

typedef enum SkSide {
  SK_SIDE_PLUS = 0,
  SK_SIDE_MINUS = 1,
} SkSide;

typedef enum SkKernelRoute {
  SK_KERNEL_ROUTE_DIRECT = 0,
  SK_KERNEL_ROUTE_BLOCKS = 1,
  SK_KERNEL_ROUTE_SERIES = 2,
} SkKernelRoute;

typedef enum SkBlock {
  SK_BLOCK_K11 = 0,
  SK_BLOCK_K12 = 1,
  SK_BLOCK_K21 = 2,
  SK_BLOCK_K22 = 3,
} SkBlock;

/**
 * Opaque kernel: the four blocks at one truncation order.
 */
typedef struct SkKernel SkKernel;

/**
 * Opaque symbol parameters.
 */
typedef struct SkParams SkParams;

typedef struct SkNormalization {
  double series_value;
  double closed_form;
  double tail_estimate;
} SkNormalization;

typedef struct SkTheorem1Residuals {
  double direct_vs_blocks;
  double direct_vs_series;
  double blocks_vs_series;
  double det_one_plus_l;
  bool pass;
} SkTheorem1Residuals;

typedef struct SkSpectrumSummary {
  double max_imag_abs;
  double min_real;
  double max_real;
  bool pass;
} SkSpectrumSummary;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *sk_version(void);

/**
 * Message for the last failed call on this thread, or NULL. The pointer is
 * valid until the next call into the library from the same thread.
 */
const char *sk_last_error_message(void);

/**
 * Build parameters from four lists and the two exponents.
 *
 * # Safety
 * Each non-empty list pointer must reference `n_*` readable doubles; `out`
 * must be writable.
 */
enum SkStatus sk_params_new(const double *alpha_plus,
                            size_t n_alpha_plus,
                            const double *beta_plus,
                            size_t n_beta_plus,
                            const double *alpha_minus,
                            size_t n_alpha_minus,
                            const double *beta_minus,
                            size_t n_beta_minus,
                            double gamma_plus,
                            double gamma_minus,
                            struct SkParams **out);

/**
 * Parameters of a named preset (`trivial`, `widom-1`, `widom-2`, `geometric`, `mixed`, `exp`).
 *
 * # Safety
 * `name` must be a NUL-terminated string; `out` must be writable.
 */
enum SkStatus sk_params_preset(const char *name, struct SkParams **out);

/**
 * # Safety
 * `p` must come from `sk_params_new` or `sk_params_preset`, or be NULL.
 */
void sk_params_free(struct SkParams *p);

/**
 * `h_0 … h_order` of one side into `out[0..=order]`.
 *
 * # Safety
 * `p` must be a live handle; `out` must hold `out_len` doubles.
 */
enum SkStatus sk_h_coefficients(const struct SkParams *p,
                                enum SkSide side,
                                size_t order,
                                double *out,
                                size_t out_len);

/**
 * Kernel blocks at truncation order `order` by the given route.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum SkStatus sk_kernel_new(const struct SkParams *p,
                            size_t order,
                            enum SkKernelRoute route,
                            struct SkKernel **out);

/**
 * Truncation order of a kernel, 0 for NULL.
 *
 * # Safety
 * `k` must be a live handle or NULL.
 */
size_t sk_kernel_order(const struct SkKernel *k);

/**
 * One block, row-major, into `out[0 .. order²]`.
 *
 * # Safety
 * `k` must be a live handle; `out` must hold `out_len` doubles.
 */
enum SkStatus sk_kernel_block(const struct SkKernel *k,
                              enum SkBlock block,
                              double *out,
                              size_t out_len);

/**
 * # Safety
 * `k` must come from `sk_kernel_new`, or be NULL.
 */
void sk_kernel_free(struct SkKernel *k);

/**
 * `Z` from the log-series (summed to `order`) and in closed form.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum SkStatus sk_normalization_z(const struct SkParams *p,
                                 size_t order,
                                 struct SkNormalization *out);

/**
 * Cross-route kernel residuals at order `order`.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum SkStatus sk_theorem1_residuals(const struct SkParams *p,
                                    size_t order,
                                    struct SkTheorem1Residuals *out);

/**
 * Eigenvalues of the row-major `n × n` matrix and the `[0, 1]` verdict.
 * `eig_re` / `eig_im` may be NULL; otherwise each holds `n` doubles,
 * sorted by decreasing real part.
 *
 * # Safety
 * `matrix` must hold `n²` doubles; non-NULL outputs must be writable.
 */
enum SkStatus sk_spectrum_verdict(const double *matrix,
                                  size_t n,
                                  double *eig_re,
                                  double *eig_im,
                                  struct SkSpectrumSummary *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SCHUR_KERNEL_H */
