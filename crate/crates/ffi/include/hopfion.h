#ifndef HOPFION_H
#define HOPFION_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  HOPFION_STATUS_OK = 0,
  HOPFION_STATUS_NULL_POINTER = 1,
  HOPFION_STATUS_INVALID_ARGUMENT = 2,
  HOPFION_STATUS_DOMAIN = 3,
  HOPFION_STATUS_UNKNOWN_NAME = 4,
  HOPFION_STATUS_CONVERGENCE = 5,
  HOPFION_STATUS_BUFFER_TOO_SMALL = 6,
  HOPFION_STATUS_INTERNAL = 7,
} HopfionStatus;

/**
 * Result of a verification run.
 */
typedef struct HopfionReport HopfionReport;

/**
 * A parameterised solution.
 */
typedef struct HopfionSolution HopfionSolution;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the calling thread's last error message, NUL-terminated and
 * truncated to `len` bytes. Returns the full message length.
 *
 * # Safety
 * `buf` must be null or point to `len` writable bytes.
 */
size_t hopfion_last_error(char *buf, size_t len);

/**
 * Creates a solution. `energy_sign` is `+1` or `-1`. For `knot-pq`, `p`
 * and `q` are the knot indices; for `dirac-base`, `p` is the free spinor
 * index and a nonzero `q` selects the dotted parameter.
 *
 * # Safety
 * `family` must be a NUL-terminated string and `out` a valid pointer.
 */
HopfionStatus hopfion_solution_new(const char *family,
                                   double a,
                                   double m,
                                   uint32_t p,
                                   uint32_t q,
                                   int32_t energy_sign,
                                   HopfionSolution **out);

/**
 * # Safety
 * `h` must be null or a handle from [`hopfion_solution_new`] not yet freed.
 */
void hopfion_solution_free(HopfionSolution *h);

/**
 * Number of complex components: 2 (Weyl), 3 (Maxwell) or 4 (Dirac).
 *
 * # Safety
 * `h` must be a live handle and `out` a valid pointer.
 */
HopfionStatus hopfion_solution_components(const HopfionSolution *h, size_t *out);

/**
 * Writes the field at `(t, x, y, z)` as interleaved real and imaginary parts.
 *
 * # Safety
 * `h` must be a live handle; `out` must hold `len` doubles.
 */
HopfionStatus hopfion_solution_evaluate(const HopfionSolution *h,
                                        double t,
                                        double x,
                                        double y,
                                        double z,
                                        double *out,
                                        size_t len);

/**
 * Writes the real current four-vector (energy density and Poynting vector
 * for Maxwell fields) into `out[0..4]`.
 *
 * # Safety
 * `h` must be a live handle; `out` must hold `len` doubles.
 */
HopfionStatus hopfion_solution_current(const HopfionSolution *h,
                                       double t,
                                       double x,
                                       double y,
                                       double z,
                                       double *out,
                                       size_t len);

/**
 * `K_n(z)` for complex `z` with `Re z > 0`.
 *
 * # Safety
 * `re`, `im` must be valid pointers.
 */
HopfionStatus hopfion_macdonald_k(int32_t n, double z_re, double z_im, double *re, double *im);

/**
 * Forward Hopf map `ξ[4] → k[3]`.
 *
 * # Safety
 * `xi` must point to 4 doubles and `k` to 3.
 */
HopfionStatus hopfion_hopf_forward(const double *xi, double *k);

/**
 * Inverse chart `(k[3], φ) → ξ[4]`; fails with `Domain` on the fiber `k + kz = 0`.
 *
 * # Safety
 * `k` must point to 3 doubles and `xi` to 4.
 */
HopfionStatus hopfion_hopf_inverse(const double *k, double phi, double *xi);

/**
 * Runs verification suites (comma-separated names or `all`).
 *
 * # Safety
 * `suites` must be a NUL-terminated string and `out` a valid pointer.
 */
HopfionStatus hopfion_verify(const char *suites,
                             uint64_t seed,
                             size_t points,
                             double tol,
                             HopfionReport **out);

/**
 * # Safety
 * `h` must be null or a handle from [`hopfion_verify`] not yet freed.
 */
void hopfion_report_free(HopfionReport *h);

/**
 * Counts records and failed records.
 *
 * # Safety
 * `h` must be a live handle; `total` and `failed` valid pointers.
 */
HopfionStatus hopfion_report_counts(const HopfionReport *h, size_t *total, size_t *failed);

/**
 * Copies the JSON report, NUL-terminated. `needed` receives the buffer
 * size required including the terminator; pass a null `buf` to query it.
 *
 * # Safety
 * `h` must be a live handle; `buf` null or `len` writable bytes; `needed` valid.
 */
HopfionStatus hopfion_report_json(const HopfionReport *h, char *buf, size_t len, size_t *needed);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* HOPFION_H */
