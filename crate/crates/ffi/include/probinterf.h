#ifndef PROBINTERF_H
#define PROBINTERF_H

/* Generated with cbindgen:0.27.0 */

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Case of the p-adic amplitude rule.
 */
typedef enum {
  /**
   * `|α₂|_p < |α₁|_p`.
   */
  PI_PADIC_CASE_A = 0,
  /**
   * `|α₁|_p < |α₂|_p`.
   */
  PI_PADIC_CASE_B = 1,
  /**
   * `|α₁|_p = |α₂|_p`.
   */
  PI_PADIC_CASE_C = 2,
} PiPadicCase;

/**
 * Interference regime of a fitted record.
 */
typedef enum {
  PI_REGIME_TRIGONOMETRIC = 0,
  PI_REGIME_HYPERBOLIC = 1,
  PI_REGIME_BOUNDARY = 2,
  PI_REGIME_DEGENERATE = 3,
} PiRegime;

/**
 * Result codes shared by every fallible function.
 */
typedef enum {
  PI_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  PI_STATUS_NULL_POINTER = 1,
  /**
   * Malformed input: non-UTF-8 text, unparsable numbers, non-prime moduli.
   */
  PI_STATUS_PARSE = 2,
  /**
   * Input outside the operation's domain (probabilities outside [0, 1],
   * phase overflow, zero divisors, invalid contexts).
   */
  PI_STATUS_DOMAIN = 3,
  /**
   * `p1 * p2 = 0`: the interference coefficient is undefined.
   */
  PI_STATUS_DEGENERATE = 4,
  /**
   * Operands carry different primes.
   */
  PI_STATUS_PRIME_MISMATCH = 5,
  PI_STATUS_DIVISION_BY_ZERO = 6,
  /**
   * A caller buffer is shorter than required.
   */
  PI_STATUS_BUFFER_TOO_SMALL = 7,
  /**
   * An internal panic was caught; this indicates a bug.
   */
  PI_STATUS_PANIC = 8,
} PiStatus;

/**
 * Opaque exact p-adic rational.
 */
typedef struct PiPadic PiPadic;

/**
 * Opaque sampled brightness profile.
 */
typedef struct PiProfile PiProfile;

/**
 * A hyperbolic number `x + j·y` with `j² = 1`.
 */
typedef struct {
  double x;
  double y;
} PiGNumber;

/**
 * Polar form `sign · modulus · e^{j·phase}`.
 */
typedef struct {
  /**
   * `+1` or `-1`.
   */
  int32_t sign;
  double modulus;
  double phase;
} PiGPolar;

/**
 * Fitted interference record for a triple `(p1, p2, p)`.
 */
typedef struct {
  double p1;
  double p2;
  double p;
  double lambda;
  PiRegime regime;
  double phase;
  /**
   * `+1` or `-1`; only meaningful for the hyperbolic regime.
   */
  int32_t sign;
} PiRecord;

/**
 * Validity window of the hyperbolic rule.
 */
typedef struct {
  double q_plus;
  double q_minus;
  /**
   * False when `q_plus < 1`; `theta_max` is then NaN.
   */
  bool has_theta_max;
  double theta_max;
  double theta_min;
} PiThetaBounds;

/**
 * Outcome of the p-adic amplitude rule, converted to floating point.
 */
typedef struct {
  PiPadicCase case_;
  double p;
  double p1;
  double p2;
  double lambda;
  double theta;
} PiPadicInterference;

/**
 * Two-alternative context with trigonometric phases.
 */
typedef struct {
  double priors[2];
  /**
   * Row-major conditionals `p(a_j | b_i)`.
   */
  double cond[2][2];
  double theta[2];
} PiContext;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread; empty after a
 * success. The pointer is valid until the next call into this library on
 * the same thread.
 */
const char *pi_last_error(void);

/**
 * Releases a string returned by this library. Null is a no-op.
 *
 * # Safety
 * `s` must be null or a pointer previously returned by this library and
 * not yet freed.
 */
void pi_string_free(char *s);

/**
 * Product in 𝐆.
 */
PiGNumber pi_g_mul(PiGNumber a, PiGNumber b);

/**
 * `x² − y²`; negative outside the light cone.
 */
double pi_g_norm_sq(PiGNumber z);

/**
 * `e^{jθ} = cosh θ + j sinh θ`.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
PiStatus pi_g_exp(double theta, PiGNumber *out);

/**
 * Polar decomposition of `z` with `x² − y² > 0`.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
PiStatus pi_g_polar(PiGNumber z, PiGPolar *out);

/**
 * `λ = (p − p1 − p2) / (2√(p1 p2))`.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
PiStatus pi_lambda_of(double p1, double p2, double p, double *out);

/**
 * `p1 + p2 + 2√(p1 p2) cos θ`.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
PiStatus pi_interfere_trig(double p1, double p2, double theta, double *out);

/**
 * `p1 + p2 ± 2√(p1 p2) cosh θ`; `sign` is `+1` or `-1`.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
PiStatus pi_interfere_hyp(double p1, double p2, double theta, int32_t sign, double *out);

/**
 * Fits λ, regime, phase and sign to `(p1, p2, p)`.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
PiStatus pi_fit_record(double p1, double p2, double p, PiRecord *out);

/**
 * Closed-form window `[0, θ_max]` / `[0, θ_min]` of the hyperbolic rule.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
PiStatus pi_theta_bounds(double p1, double p2, PiThetaBounds *out);

/**
 * Creates `num/den` in ℚ viewed in ℚ_p.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
PiStatus pi_padic_new(uint64_t p, int64_t num, int64_t den, PiPadic **out);

/**
 * Parses an integer, `a/b` fraction or decimal with arbitrary precision.
 *
 * # Safety
 * `text` must be null or NUL-terminated; `out` must be null or valid for
 * writes.
 */
PiStatus pi_padic_parse(uint64_t p, const char *text, PiPadic **out);

/**
 * Releases a handle. Null is a no-op.
 *
 * # Safety
 * `h` must be null or a live handle from this library, freed only once.
 */
void pi_padic_free(PiPadic *h);

/**
 * The p-adic order. For zero, `*is_infinite` is set and `*order` is 0.
 *
 * # Safety
 * `h` must be a live handle; the out-pointers must be valid for writes.
 */
PiStatus pi_padic_order(const PiPadic *h, int64_t *order, bool *is_infinite);

/**
 * `|x|_p` as a float (exact value available via the order).
 *
 * # Safety
 * `h` must be a live handle; `out` must be valid for writes.
 */
PiStatus pi_padic_abs(const PiPadic *h, double *out);

/**
 * The value as `num/den`; free with [`pi_string_free`]. Null on a null
 * handle.
 *
 * # Safety
 * `h` must be null or a live handle.
 */
char *pi_padic_to_string(const PiPadic *h);

/**
 * Sum of two p-adic rationals with the same prime.
 *
 * # Safety
 * `a`, `b` must be live handles; `out` must be valid for writes.
 */
PiStatus pi_padic_add(const PiPadic *a, const PiPadic *b, PiPadic **out);

/**
 * Product of two p-adic rationals with the same prime.
 *
 * # Safety
 * `a`, `b` must be live handles; `out` must be valid for writes.
 */
PiStatus pi_padic_mul(const PiPadic *a, const PiPadic *b, PiPadic **out);

/**
 * The p-adic amplitude rule for `α₁ + ε·α₂`.
 *
 * # Safety
 * All handles must be live; `out` must be valid for writes.
 */
PiStatus pi_padic_interfere(const PiPadic *alpha1,
                            const PiPadic *alpha2,
                            const PiPadic *epsilon,
                            PiPadicInterference *out);

/**
 * Trigonometric profile on `n` evenly spaced radii in `[lo, hi]`.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
PiStatus pi_profile_trig(double p1, double p2, double lo, double hi, size_t n, PiProfile **out);

/**
 * p-adic two-slit profile over `ε ∈ [1, eps_max]` not divisible by `p`.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
PiStatus pi_profile_padic(uint64_t p, uint32_t l, uint64_t eps_max, PiProfile **out);

/**
 * Number of samples; 0 for a null handle.
 *
 * # Safety
 * `h` must be null or a live handle.
 */
size_t pi_profile_len(const PiProfile *h);

/**
 * Copies the sampled probabilities into `buf` (capacity `len`).
 *
 * # Safety
 * `h` must be a live handle; `buf` must be valid for `len` writes.
 */
PiStatus pi_profile_values(const PiProfile *h, double *buf, size_t len);

/**
 * Copies the radii into `buf` (capacity `len`).
 *
 * # Safety
 * `h` must be a live handle; `buf` must be valid for `len` writes.
 */
PiStatus pi_profile_grid(const PiProfile *h, double *buf, size_t len);

/**
 * The profile as CSV; free with [`pi_string_free`]. Null on a null handle.
 *
 * # Safety
 * `h` must be null or a live handle.
 */
char *pi_profile_csv(const PiProfile *h);

/**
 * Releases a profile. Null is a no-op.
 *
 * # Safety
 * `h` must be null or a live handle, freed only once.
 */
void pi_profile_free(PiProfile *h);

/**
 * Classical total probability `Σ_i p_i^b p_ij`.
 *
 * # Safety
 * `ctx` must be valid for reads; `out` must be valid for two writes.
 */
PiStatus pi_total_prob_classical(const PiContext *ctx, double *out);

/**
 * Total probability with the trigonometric interference term.
 *
 * # Safety
 * `ctx` must be valid for reads; `out` must be valid for two writes.
 */
PiStatus pi_total_prob_quantum(const PiContext *ctx, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PROBINTERF_H */
