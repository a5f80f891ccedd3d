#ifndef DIRAC_MAGNETO_H
#define DIRAC_MAGNETO_H

/* Generated from the dirac-magneto-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every FFI call.
 */
typedef enum DmStatus {
  /**
   * Success; the out parameters hold the result.
   */
  DM_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  DM_STATUS_NULL_POINTER = 1,
  /**
   * An argument violated a domain invariant (bad mass, amplitudes, ...).
   */
  DM_STATUS_INVALID_ARGUMENT = 2,
  /**
   * An internal consistency check failed (non-real observable, NaN).
   */
  DM_STATUS_NUMERICAL_FAILURE = 3,
  /**
   * A panic was caught at the FFI boundary.
   */
  DM_STATUS_INTERNAL = 4,
} DmStatus;

/**
 * A plane-wave electron state. Opaque: create with `dm_plane_wave_new`,
 * release with `dm_plane_wave_free`.
 */
typedef struct DmPlaneWave DmPlaneWave;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Free-particle energy `sqrt(k1^2 + k2^2 + k3^2 + mass^2)`.
 *
 * # Safety
 * `out` must be a valid pointer to an `f64`.
 */
enum DmStatus dm_energy_of(double k1, double k2, double k3, double mass, double *out);

/**
 * Chirality index `Re(l+ conj(l-)) + Im(l+ conj(l-))` of a normalized
 * amplitude pair.
 *
 * # Safety
 * `out` must be a valid pointer to an `f64`.
 */
enum DmStatus dm_chirality_index(double lambda_plus_re,
                                 double lambda_plus_im,
                                 double lambda_minus_re,
                                 double lambda_minus_im,
                                 double *out);

/**
 * Closed-form spin change `(|e| / m_e) B3 d CI`.
 *
 * # Safety
 * `out` must be a valid pointer to an `f64`.
 */
enum DmStatus dm_expect_delta_s3(double b3,
                                 double d,
                                 double e_abs,
                                 double m_e,
                                 double lambda_plus_re,
                                 double lambda_plus_im,
                                 double lambda_minus_re,
                                 double lambda_minus_im,
                                 double *out);

/**
 * Closed-form energy change `(2 m_e |e| / E0) B3 d CI`; `energy_e0` must
 * be at least `m_e`.
 *
 * # Safety
 * `out` must be a valid pointer to an `f64`.
 */
enum DmStatus dm_expect_delta_h(double b3,
                                double d,
                                double e_abs,
                                double m_e,
                                double energy_e0,
                                double lambda_plus_re,
                                double lambda_plus_im,
                                double lambda_minus_re,
                                double lambda_minus_im,
                                double *out);

/**
 * Bohr magneton `|e| / (2 m_e)`.
 *
 * # Safety
 * `out` must be a valid pointer to an `f64`.
 */
enum DmStatus dm_bohr_magneton(double e_abs, double m_e, double *out);

/**
 * Larmor frequency `g_s mu_B B`.
 *
 * # Safety
 * `out` must be a valid pointer to an `f64`.
 */
enum DmStatus dm_larmor_frequency(double g_s, double mu_b, double b, double *out);

/**
 * Zeeman shift `-g_s mu_B (B . S)` for 3-vectors passed component-wise.
 *
 * # Safety
 * `out` must be a valid pointer to an `f64`.
 */
enum DmStatus dm_zeeman_shift(double b1,
                              double b2,
                              double b3,
                              double s1,
                              double s2,
                              double s3,
                              double g_s,
                              double mu_b,
                              double *out);

/**
 * Creates a plane-wave state moving along z. On success `*out` owns the
 * handle; release it with `dm_plane_wave_free`.
 *
 * # Safety
 * `out` must be a valid pointer to a `*mut DmPlaneWave`.
 */
enum DmStatus dm_plane_wave_new(double k3,
                                double mass,
                                double lambda_plus_re,
                                double lambda_plus_im,
                                double lambda_minus_re,
                                double lambda_minus_im,
                                double norm_volume,
                                struct DmPlaneWave **out);

/**
 * Releases a handle from `dm_plane_wave_new`. A null handle is a no-op.
 *
 * # Safety
 * `handle` must be null or a pointer previously returned by
 * `dm_plane_wave_new` that has not been freed.
 */
void dm_plane_wave_free(struct DmPlaneWave *handle);

/**
 * `E0 = sqrt(k3^2 + mass^2)` of the state.
 *
 * # Safety
 * `handle` must be a live handle from `dm_plane_wave_new`; `out` must be a
 * valid pointer to an `f64`.
 */
enum DmStatus dm_plane_wave_energy(const struct DmPlaneWave *handle, double *out);

/**
 * Total energy by Simpson quadrature of the energy density over the
 * state's normalization cube; `samples_per_axis` must be odd and >= 3.
 *
 * # Safety
 * `handle` must be a live handle from `dm_plane_wave_new`; `out` must be a
 * valid pointer to an `f64`.
 */
enum DmStatus dm_plane_wave_total_energy(const struct DmPlaneWave *handle,
                                         uintptr_t samples_per_axis,
                                         uintptr_t refinement_levels,
                                         double *out);

/**
 * Spin vector by Simpson quadrature; writes three components through
 * `out`, which must point at an array of at least 3 `f64`.
 *
 * # Safety
 * `handle` must be a live handle from `dm_plane_wave_new`; `out` must be a
 * valid pointer to at least 3 `f64`.
 */
enum DmStatus dm_plane_wave_spin_vector(const struct DmPlaneWave *handle,
                                        uintptr_t samples_per_axis,
                                        uintptr_t refinement_levels,
                                        double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DIRAC_MAGNETO_H */
