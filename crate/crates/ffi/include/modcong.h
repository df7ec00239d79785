#ifndef MODCONG_H
#define MODCONG_H

#include <stddef.h>
#include <stdint.h>

typedef enum McStatus {
  MC_STATUS_OK = 0,
  /*
   A verification ran and at least one check failed.
   */
  MC_STATUS_CHECK_FAILED = 1,
  MC_STATUS_NULL_POINTER = 2,
  MC_STATUS_INVALID_ARGUMENT = 3,
  MC_STATUS_UNKNOWN_NAME = 4,
  MC_STATUS_PRECISION_EXCEEDED = 5,
  MC_STATUS_ARITHMETIC = 6,
  MC_STATUS_PANIC = 7,
} McStatus;

/*
 Opaque truncated power series.
 */
typedef struct McSeries McSeries;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Expands a named form (`"f1"`, `"h:3"`, …) to `terms` coefficients.

 # Safety
 `name` must be a NUL-terminated string; `out` must be writable.
 */
enum McStatus mc_form_expand(const char *name, uintptr_t terms, struct McSeries **out);

/*
 Expands `Π η(s_i τ/2)^{e_i}` to `terms` coefficients.

 # Safety
 `scales` and `exponents` must each point to `len` readable values.
 */
enum McStatus mc_eta_quotient_expand(const uint32_t *scales,
                                     const int64_t *exponents,
                                     uintptr_t len,
                                     uintptr_t terms,
                                     struct McSeries **out);

/*
 Number of known coefficients; 0 for a null handle.

 # Safety
 `s` must be null or a live handle.
 */
uintptr_t mc_series_prec(const struct McSeries *s);

/*
 Coefficient of `q^n` as a decimal string.

 # Safety
 `s` must be a live handle; `out` must be writable.
 */
enum McStatus mc_series_coeff(const struct McSeries *s, uintptr_t n, char **out);

/*
 # Safety
 `a` and `b` must be live handles; `out` must be writable.
 */
enum McStatus mc_series_mul(const struct McSeries *a,
                            const struct McSeries *b,
                            struct McSeries **out);

/*
 Reduces coefficients modulo the decimal integer `modulus`.

 # Safety
 `s` must be a live handle, `modulus` a NUL-terminated string.
 */
enum McStatus mc_series_reduce_mod(const struct McSeries *s,
                                   const char *modulus,
                                   struct McSeries **out);

/*
 `{"prec": N, "modulus": "M"|null, "coeffs": ["…", …]}`

 # Safety
 `s` must be a live handle; `out` must be writable.
 */
enum McStatus mc_series_to_json(const struct McSeries *s, char **out);

/*
 # Safety
 `s` must be null or a handle not yet freed.
 */
void mc_series_free(struct McSeries *s);

/*
 Runs a verification family and writes its JSON report. `prime_max = 0`
 and `terms = 0` keep the family defaults. Returns `CheckFailed` when the
 report contains a failing check.

 # Safety
 `family` must be a NUL-terminated string; `out_json` may be null.
 */
enum McStatus mc_verify(const char *family, uint64_t prime_max, uintptr_t terms, char **out_json);

/*
 `p = x² + y²` with `0 < x <= y`.

 # Safety
 `x` and `y` must be writable.
 */
enum McStatus mc_cornacchia(uint64_t p, uint64_t *x, uint64_t *y);

/*
 Prime coefficient of `f₁` from the two-squares formula, as a decimal string.

 # Safety
 `out` must be writable.
 */
enum McStatus mc_cm_b1(uint64_t p, char **out);

/*
 Value of a named sequence (`"A:3"`, `"D3"`, `"aperyB"`, …) at `index`.

 # Safety
 `name` must be a NUL-terminated string; `out` must be writable.
 */
enum McStatus mc_sequence_value(const char *name, uintptr_t index, char **out);

/*
 Message for the last failed call on this thread; empty after a success.
 The pointer stays valid until the next call on the same thread.
 */
const char *mc_last_error(void);

/*
 # Safety
 `s` must be null or a string returned by this library and not yet freed.
 */
void mc_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MODCONG_H */
