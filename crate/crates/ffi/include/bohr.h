/* Generated by cbindgen. Do not edit. */

#ifndef BOHR_H
#define BOHR_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum BohrStatus {
  BOHR_STATUS_OK = 0,
  /**
   * Null pointer, bad UTF-8 or a too-small buffer.
   */
  BOHR_STATUS_INVALID_ARGUMENT = 1,
  BOHR_STATUS_PARAM_OUT_OF_RANGE = 2,
  BOHR_STATUS_POSITIVITY_REQUIRED = 3,
  BOHR_STATUS_NUMERICAL_FAILURE = 4,
  BOHR_STATUS_PANIC = 5,
} BohrStatus;

typedef enum BohrClass {
  BOHR_CLASS_STARLIKE = 0,
  BOHR_CLASS_CONVEX = 1,
} BohrClass;

/**
 * Opaque extremal pair handle.
 */
typedef struct BohrExtremal BohrExtremal;

/**
 * Opaque kernel handle.
 */
typedef struct BohrPhi BohrPhi;

/**
 * A solved radius. `root` is NaN when no root was located.
 */
typedef struct BohrRadius {
  double radius;
  double root;
  bool capped;
  double residual;
} BohrRadius;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds a kernel from its name and `n` parameter pairs.
 *
 * # Safety
 * `name` must be a NUL-terminated string; `keys` and `values` must point to
 * `n` elements each (or may be null when `n == 0`); `out` must be writable.
 */
enum BohrStatus bohr_phi_new(const char *name,
                             const char *const *keys,
                             const double *values,
                             size_t n,
                             struct BohrPhi **out);

/**
 * # Safety
 * `phi` must come from [`bohr_phi_new`] and not be freed twice. Null is ignored.
 */
void bohr_phi_free(struct BohrPhi *phi);

/**
 * Writes `B_0..B_order` into `out`, which must hold `len >= order + 1` values.
 *
 * # Safety
 * `phi` must be a live handle and `out` must point to `len` writable doubles.
 */
enum BohrStatus bohr_phi_coefficients(const struct BohrPhi *phi,
                                      size_t order,
                                      double *out,
                                      size_t len);

/**
 * `φ(x)` for real `x ∈ (-1, 1)`.
 *
 * # Safety
 * `phi` must be a live handle and `out` writable.
 */
enum BohrStatus bohr_phi_eval(const struct BohrPhi *phi, double x, double *out);

/**
 * Whether `B_1 > 0` and `B_n ≥ 0` up to `order`.
 *
 * # Safety
 * `phi` must be a live handle and `out` writable.
 */
enum BohrStatus bohr_phi_is_positive(const struct BohrPhi *phi, size_t order, bool *out);

/**
 * # Safety
 * `phi` must be a live handle and `out` writable.
 */
enum BohrStatus bohr_extremal_new(const struct BohrPhi *phi,
                                  size_t order,
                                  struct BohrExtremal **out);

/**
 * # Safety
 * `ext` must come from [`bohr_extremal_new`] and not be freed twice. Null is ignored.
 */
void bohr_extremal_free(struct BohrExtremal *ext);

/**
 * # Safety
 * `ext` must be a live handle and `out` writable.
 */
enum BohrStatus bohr_extremal_eval_h(const struct BohrExtremal *ext, double r, double *out);

/**
 * # Safety
 * `ext` must be a live handle and `out` writable.
 */
enum BohrStatus bohr_extremal_eval_k(const struct BohrExtremal *ext, double r, double *out);

/**
 * # Safety
 * `ext` must be a live handle and `out` writable.
 */
enum BohrStatus bohr_extremal_h_minus1(const struct BohrExtremal *ext, double *out);

/**
 * # Safety
 * `ext` must be a live handle and `out` writable.
 */
enum BohrStatus bohr_extremal_k_minus1(const struct BohrExtremal *ext, double *out);

/**
 * # Safety
 * `phi` must be a live handle and `out` writable.
 */
enum BohrStatus bohr_starlike_radius(const struct BohrPhi *phi, double tol, struct BohrRadius *out);

/**
 * # Safety
 * `phi` must be a live handle and `out` writable.
 */
enum BohrStatus bohr_convex_radius(const struct BohrPhi *phi, double tol, struct BohrRadius *out);

/**
 * Radius for functions starlike with respect to a boundary point.
 *
 * # Safety
 * `out` must be writable.
 */
enum BohrStatus bohr_galpha_radius(double alpha, double *out);

/**
 * Value of parameter `over` in `[low, high]` where the radius of kernel
 * `name` reaches 1/3; the other parameters come from `keys`/`values`.
 *
 * # Safety
 * As for [`bohr_phi_new`]; `over` must be a NUL-terminated string.
 */
enum BohrStatus bohr_threshold(const char *name,
                               const char *over,
                               double low,
                               double high,
                               const char *const *keys,
                               const double *values,
                               size_t n,
                               enum BohrClass class_kind,
                               double tol,
                               double *out);

/**
 * Message of the last failing call on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *bohr_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *bohr_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BOHR_H */
