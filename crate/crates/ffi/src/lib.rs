//! C ABI over the dirac-magneto core: plane-wave states behind an opaque
//! handle, plus the scalar closed forms and comparator quantities.
//!
//! Conventions shared by every function:
//!
//! * results are written through `out` pointers and a [`DmStatus`] is
//!   returned; outputs are only written on `DM_STATUS_OK`,
//! * null pointers are reported, never dereferenced,
//! * panics are caught at the boundary and surfaced as
//!   `DM_STATUS_INTERNAL`, so no unwinding crosses into C.
//!
//! The matching header `include/dirac_magneto.h` is regenerated by the
//! build script on every change to this file.

use std::panic::{catch_unwind, AssertUnwindSafe};

use dirac_magneto::comparators;
use dirac_magneto::magnetics::{self, MagneticScenario};
use dirac_magneto::observables;
use dirac_magneto::quadrature::{BoxRegion, QuadratureRule};
use dirac_magneto::spinor::{energy_of, PlaneWaveState, SpinAmplitudes};
use dirac_magneto::{Error, Vec3, C64};

/// Result of every FFI call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DmStatus {
    /// Success; the out parameters hold the result.
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// An argument violated a domain invariant (bad mass, amplitudes, ...).
    InvalidArgument = 2,
    /// An internal consistency check failed (non-real observable, NaN).
    NumericalFailure = 3,
    /// A panic was caught at the FFI boundary.
    Internal = 4,
}

fn status_of(e: &Error) -> DmStatus {
    match e {
        Error::Domain(_) => DmStatus::InvalidArgument,
        _ => DmStatus::NumericalFailure,
    }
}

fn guarded(body: impl FnOnce() -> DmStatus) -> DmStatus {
    catch_unwind(AssertUnwindSafe(body)).unwrap_or(DmStatus::Internal)
}

fn amplitudes(lp_re: f64, lp_im: f64, lm_re: f64, lm_im: f64) -> Result<SpinAmplitudes, Error> {
    SpinAmplitudes::new(C64::new(lp_re, lp_im), C64::new(lm_re, lm_im))
}

/// A plane-wave electron state. Opaque: create with `dm_plane_wave_new`,
/// release with `dm_plane_wave_free`.
pub struct DmPlaneWave {
    inner: PlaneWaveState,
}

/// Free-particle energy `sqrt(k1^2 + k2^2 + k3^2 + mass^2)`.
///
/// # Safety
/// `out` must be a valid pointer to an `f64`.
#[no_mangle]
pub unsafe extern "C" fn dm_energy_of(
    k1: f64,
    k2: f64,
    k3: f64,
    mass: f64,
    out: *mut f64,
) -> DmStatus {
    if out.is_null() {
        return DmStatus::NullPointer;
    }
    guarded(|| match energy_of(&Vec3::new(k1, k2, k3), mass) {
        Ok(energy) => {
            *out = energy;
            DmStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// Chirality index `Re(l+ conj(l-)) + Im(l+ conj(l-))` of a normalized
/// amplitude pair.
///
/// # Safety
/// `out` must be a valid pointer to an `f64`.
#[no_mangle]
pub unsafe extern "C" fn dm_chirality_index(
    lambda_plus_re: f64,
    lambda_plus_im: f64,
    lambda_minus_re: f64,
    lambda_minus_im: f64,
    out: *mut f64,
) -> DmStatus {
    if out.is_null() {
        return DmStatus::NullPointer;
    }
    guarded(|| {
        match amplitudes(
            lambda_plus_re,
            lambda_plus_im,
            lambda_minus_re,
            lambda_minus_im,
        ) {
            Ok(amps) => {
                *out = magnetics::chirality_index(&amps);
                DmStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Closed-form spin change `(|e| / m_e) B3 d CI`.
///
/// # Safety
/// `out` must be a valid pointer to an `f64`.
#[no_mangle]
pub unsafe extern "C" fn dm_expect_delta_s3(
    b3: f64,
    d: f64,
    e_abs: f64,
    m_e: f64,
    lambda_plus_re: f64,
    lambda_plus_im: f64,
    lambda_minus_re: f64,
    lambda_minus_im: f64,
    out: *mut f64,
) -> DmStatus {
    if out.is_null() {
        return DmStatus::NullPointer;
    }
    guarded(|| {
        let scenario = MagneticScenario {
            b3,
            d,
            e_abs,
            m_e,
            ..Default::default()
        };
        let result = amplitudes(
            lambda_plus_re,
            lambda_plus_im,
            lambda_minus_re,
            lambda_minus_im,
        )
        .and_then(|amps| magnetics::expect_delta_s3_closed(&scenario, &amps));
        match result {
            Ok(value) => {
                *out = value;
                DmStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Closed-form energy change `(2 m_e |e| / E0) B3 d CI`; `energy_e0` must
/// be at least `m_e`.
///
/// # Safety
/// `out` must be a valid pointer to an `f64`.
#[no_mangle]
pub unsafe extern "C" fn dm_expect_delta_h(
    b3: f64,
    d: f64,
    e_abs: f64,
    m_e: f64,
    energy_e0: f64,
    lambda_plus_re: f64,
    lambda_plus_im: f64,
    lambda_minus_re: f64,
    lambda_minus_im: f64,
    out: *mut f64,
) -> DmStatus {
    if out.is_null() {
        return DmStatus::NullPointer;
    }
    guarded(|| {
        let scenario = MagneticScenario {
            b3,
            d,
            e_abs,
            m_e,
            ..Default::default()
        };
        let result = amplitudes(
            lambda_plus_re,
            lambda_plus_im,
            lambda_minus_re,
            lambda_minus_im,
        )
        .and_then(|amps| magnetics::expect_delta_h_closed(&scenario, energy_e0, &amps));
        match result {
            Ok(value) => {
                *out = value;
                DmStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Bohr magneton `|e| / (2 m_e)`.
///
/// # Safety
/// `out` must be a valid pointer to an `f64`.
#[no_mangle]
pub unsafe extern "C" fn dm_bohr_magneton(e_abs: f64, m_e: f64, out: *mut f64) -> DmStatus {
    if out.is_null() {
        return DmStatus::NullPointer;
    }
    if !(e_abs.is_finite() && e_abs > 0.0 && m_e.is_finite() && m_e > 0.0) {
        return DmStatus::InvalidArgument;
    }
    *out = comparators::bohr_magneton(e_abs, m_e);
    DmStatus::Ok
}

/// Larmor frequency `g_s mu_B B`.
///
/// # Safety
/// `out` must be a valid pointer to an `f64`.
#[no_mangle]
pub unsafe extern "C" fn dm_larmor_frequency(
    g_s: f64,
    mu_b: f64,
    b: f64,
    out: *mut f64,
) -> DmStatus {
    if out.is_null() {
        return DmStatus::NullPointer;
    }
    *out = comparators::larmor_frequency(g_s, mu_b, b);
    DmStatus::Ok
}

/// Zeeman shift `-g_s mu_B (B . S)` for 3-vectors passed component-wise.
///
/// # Safety
/// `out` must be a valid pointer to an `f64`.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn dm_zeeman_shift(
    b1: f64,
    b2: f64,
    b3: f64,
    s1: f64,
    s2: f64,
    s3: f64,
    g_s: f64,
    mu_b: f64,
    out: *mut f64,
) -> DmStatus {
    if out.is_null() {
        return DmStatus::NullPointer;
    }
    *out = comparators::zeeman_shift(&Vec3::new(b1, b2, b3), &Vec3::new(s1, s2, s3), g_s, mu_b);
    DmStatus::Ok
}

/// Creates a plane-wave state moving along z. On success `*out` owns the
/// handle; release it with `dm_plane_wave_free`.
///
/// # Safety
/// `out` must be a valid pointer to a `*mut DmPlaneWave`.
#[no_mangle]
pub unsafe extern "C" fn dm_plane_wave_new(
    k3: f64,
    mass: f64,
    lambda_plus_re: f64,
    lambda_plus_im: f64,
    lambda_minus_re: f64,
    lambda_minus_im: f64,
    norm_volume: f64,
    out: *mut *mut DmPlaneWave,
) -> DmStatus {
    if out.is_null() {
        return DmStatus::NullPointer;
    }
    guarded(|| {
        let state = amplitudes(
            lambda_plus_re,
            lambda_plus_im,
            lambda_minus_re,
            lambda_minus_im,
        )
        .and_then(|amps| PlaneWaveState::along_z(k3, mass, amps, norm_volume));
        match state {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(DmPlaneWave { inner }));
                DmStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Releases a handle from `dm_plane_wave_new`. A null handle is a no-op.
///
/// # Safety
/// `handle` must be null or a pointer previously returned by
/// `dm_plane_wave_new` that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn dm_plane_wave_free(handle: *mut DmPlaneWave) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// `E0 = sqrt(k3^2 + mass^2)` of the state.
///
/// # Safety
/// `handle` must be a live handle from `dm_plane_wave_new`; `out` must be a
/// valid pointer to an `f64`.
#[no_mangle]
pub unsafe extern "C" fn dm_plane_wave_energy(
    handle: *const DmPlaneWave,
    out: *mut f64,
) -> DmStatus {
    if handle.is_null() || out.is_null() {
        return DmStatus::NullPointer;
    }
    *out = (*handle).inner.energy_e0();
    DmStatus::Ok
}

/// Total energy by Simpson quadrature of the energy density over the
/// state's normalization cube; `samples_per_axis` must be odd and >= 3.
///
/// # Safety
/// `handle` must be a live handle from `dm_plane_wave_new`; `out` must be a
/// valid pointer to an `f64`.
#[no_mangle]
pub unsafe extern "C" fn dm_plane_wave_total_energy(
    handle: *const DmPlaneWave,
    samples_per_axis: usize,
    refinement_levels: usize,
    out: *mut f64,
) -> DmStatus {
    if handle.is_null() || out.is_null() {
        return DmStatus::NullPointer;
    }
    guarded(|| {
        let state = &(*handle).inner;
        match norm_cube(state, samples_per_axis).and_then(|region| {
            observables::observable_report(
                state,
                &region,
                &QuadratureRule::simpson(refinement_levels),
            )
        }) {
            Ok(report) => {
                *out = report.total_energy.value;
                DmStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Spin vector by Simpson quadrature; writes three components through
/// `out`, which must point at an array of at least 3 `f64`.
///
/// # Safety
/// `handle` must be a live handle from `dm_plane_wave_new`; `out` must be a
/// valid pointer to at least 3 `f64`.
#[no_mangle]
pub unsafe extern "C" fn dm_plane_wave_spin_vector(
    handle: *const DmPlaneWave,
    samples_per_axis: usize,
    refinement_levels: usize,
    out: *mut f64,
) -> DmStatus {
    if handle.is_null() || out.is_null() {
        return DmStatus::NullPointer;
    }
    guarded(|| {
        let state = &(*handle).inner;
        match norm_cube(state, samples_per_axis).and_then(|region| {
            observables::spin_vector(state, &region, &QuadratureRule::simpson(refinement_levels))
        }) {
            Ok(spin) => {
                let slice = std::slice::from_raw_parts_mut(out, 3);
                slice[0] = spin.value.x;
                slice[1] = spin.value.y;
                slice[2] = spin.value.z;
                DmStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

fn norm_cube(state: &PlaneWaveState, samples_per_axis: usize) -> Result<BoxRegion, Error> {
    BoxRegion::cube(Vec3::zeros(), state.norm_volume().cbrt(), samples_per_axis)
}
