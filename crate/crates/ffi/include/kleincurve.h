#ifndef KLEINCURVE_H
#define KLEINCURVE_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status of every call. Values are stable.
typedef enum KcStatus {
  KC_STATUS_OK = 0,
  KC_STATUS_NULL_POINTER = 1,
  KC_STATUS_INVALID_INPUT = 2,
  KC_STATUS_NON_CONVERGENT = 3,
  KC_STATUS_NOT_INVARIANT = 4,
  KC_STATUS_ILL_CONDITIONED = 5,
  KC_STATUS_UNSUPPORTED = 6,
  KC_STATUS_FAILED = 7,
  KC_STATUS_PANIC = 8,
} KcStatus;

typedef enum KcElementKind {
  KC_ELEMENT_KIND_ELLIPTIC = 0,
  KC_ELEMENT_KIND_PARABOLIC = 1,
  KC_ELEMENT_KIND_LOXODROMIC = 2,
} KcElementKind;

// Opaque nonzero homogeneous polynomial in `x, y, z`.
typedef struct KcPoly KcPoly;

// Opaque element of PSL(3,ℂ).
typedef struct KcTransform KcTransform;

// Numeric invariants of a curve with only nodes and cusps as singularities.
typedef struct KcCurveInvariants {
  int64_t degree;
  int64_t nodes;
  int64_t cusps;
  int64_t class_;
  int64_t inflections;
  int64_t genus;
} KcCurveInvariants;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. Valid until the
// next failing call on the same thread; do not free.
const char *kc_last_error_message(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void kc_string_free(char *s);

// Creates a transformation from 18 doubles.
//
// # Safety
// `entries` must point to 18 readable doubles; `out` must be writable.
enum KcStatus kc_transform_new(const double *entries, struct KcTransform **out);

// # Safety
// `t` must come from [`kc_transform_new`] and not have been freed. Null is ignored.
void kc_transform_free(struct KcTransform *t);

// Writes the determinant-1 lift as 18 doubles.
//
// # Safety
// `t` must be a live handle; `out` must point to 18 writable doubles.
enum KcStatus kc_transform_lift(const struct KcTransform *t, double *out);

// # Safety
// `t` must be a live handle; `out` must be writable.
enum KcStatus kc_classify_element(const struct KcTransform *t, double tol, enum KcElementKind *out);

// Limit of the rescaled powers, normalized so its largest entry is 1.
//
// # Safety
// `t` must be a live handle; `out` must point to 18 writable doubles and
// `rank` must be writable.
enum KcStatus kc_power_limit(const struct KcTransform *t, double tol, double *out, uint32_t *rank);

// Parses text such as `x*y^2 - z^3`.
//
// # Safety
// `text` must be a nul-terminated string; `out` must be writable.
enum KcStatus kc_poly_parse(const char *text, struct KcPoly **out);

// # Safety
// `p` must come from [`kc_poly_parse`] and not have been freed. Null is ignored.
void kc_poly_free(struct KcPoly *p);

// # Safety
// `p` must be a live handle; `out` must be writable.
enum KcStatus kc_poly_degree(const struct KcPoly *p, uint32_t *out);

// Text form of the polynomial; release with [`kc_string_free`].
//
// # Safety
// `p` must be a live handle; `out` must be writable.
enum KcStatus kc_poly_to_string(const struct KcPoly *p, char **out);

// Certifies `F(g·X) = λ F(X)`: writes `λ` as two doubles and the relative
// residual. Fails with `NotInvariant` (residual still written) otherwise.
//
// # Safety
// Handles must be live; `scale` must point to 2 writable doubles and
// `residual` must be writable.
enum KcStatus kc_invariance_check(const struct KcPoly *p,
                                  const struct KcTransform *t,
                                  double tol,
                                  double *scale,
                                  double *residual);

// # Safety
// `p` must be a live handle; `out` must be writable.
enum KcStatus kc_curve_invariants(const struct KcPoly *p, struct KcCurveInvariants *out);

// Full configuration report of a scene (JSON text) as a machine document.
// `exit_code` receives the command-line exit code for the same scene; the
// document is written even when that code is nonzero.
//
// # Safety
// `scene_json` must be a nul-terminated string; `out` and `exit_code` must
// be writable. Release `*out` with [`kc_string_free`].
enum KcStatus kc_report_json(const char *scene_json,
                             double tol,
                             uint64_t seed,
                             char **out,
                             int32_t *exit_code);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KLEINCURVE_H */
