//! Zeeman and Larmor reference predictions.
//!
//! These are the textbook quantities the magnetic estimates are compared
//! against: the Bohr magneton, the Zeeman energy shift, the Larmor
//! frequency, and the classical angular momentum of a circulating moment.
//! `larmor_form_delta_s3` rewrites the closed-form spin change as
//! `omega_L * d * CI`; with `g_s = 2` and `mu_B = |e| / (2 m_e)` it agrees
//! with [`expect_delta_s3_closed`](crate::magnetics::expect_delta_s3_closed)
//! bit for bit, because `g_s * mu_B` collapses to `|e| / m_e` exactly
//! (scaling by two commutes with rounding) and both routes multiply the
//! remaining factors in the same order.

use crate::error::{Error, Result};
use crate::magnetics::chirality_index;
use crate::spinor::SpinAmplitudes;
use crate::Vec3;

/// Mass and orbit radius of a classical circulating moment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalMomentSpec {
    mass: f64,
    radius: f64,
}

impl ClassicalMomentSpec {
    pub fn new(mass: f64, radius: f64) -> Result<Self> {
        if !mass.is_finite() || mass <= 0.0 {
            return Err(Error::domain(format!(
                "moment mass must be positive, got {mass}"
            )));
        }
        if !radius.is_finite() || radius <= 0.0 {
            return Err(Error::domain(format!(
                "orbit radius must be positive, got {radius}"
            )));
        }
        Ok(ClassicalMomentSpec { mass, radius })
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }
}

/// `mu_B = |e| / (2 m_e)`. Inputs are assumed positive.
pub fn bohr_magneton(e_abs: f64, m_e: f64) -> f64 {
    e_abs / (2.0 * m_e)
}

/// Zeeman shift `-g_s mu_B (B . S)` of a spin expectation `S` in a field `B`.
pub fn zeeman_shift(b: &Vec3, s: &Vec3, g_s: f64, mu_b: f64) -> f64 {
    -(g_s * mu_b * b.dot(s))
}

/// Larmor angular frequency `omega_L = g_s mu_B B`.
pub fn larmor_frequency(g_s: f64, mu_b: f64, b: f64) -> f64 {
    g_s * mu_b * b
}

/// Speed of circular motion at radius `r` and angular frequency `omega`.
pub fn circular_velocity(r: f64, omega: f64) -> f64 {
    r * omega
}

/// Classical angular momentum `L_z = M v r` with `v = r omega`; written as
/// the literal product so it matches `M * circular_velocity(r, omega) * r`
/// exactly.
pub fn classical_lz(spec: &ClassicalMomentSpec, omega: f64) -> f64 {
    spec.mass * circular_velocity(spec.radius, omega) * spec.radius
}

/// Spin change written against the Larmor frequency: `omega_L * d * CI`.
/// `d` must be positive.
pub fn larmor_form_delta_s3(omega_l: f64, d: f64, amplitudes: &SpinAmplitudes) -> f64 {
    omega_l * d * chirality_index(amplitudes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::magnetics::{expect_delta_s3_closed, MagneticScenario};
    use crate::spinor::Spin;
    use crate::C64;

    /// Amplitude pair with an exactly representable chirality index of 1/2.
    fn dyadic_balanced() -> SpinAmplitudes {
        SpinAmplitudes::new(C64::new(0.5, 0.5), C64::new(0.5, -0.5)).unwrap()
    }

    #[test]
    fn bohr_magneton_hand_values() {
        assert_eq!(bohr_magneton(1.0, 1.0), 0.5);
        assert_eq!(bohr_magneton(2.0, 1.0), 1.0);
        assert_eq!(bohr_magneton(1.0, 0.5), 1.0);
    }

    #[test]
    fn zeeman_shift_hand_values() {
        let shift = zeeman_shift(
            &Vec3::new(0.0, 0.0, 1.0),
            &Vec3::new(0.0, 0.0, 0.5),
            2.0,
            0.5,
        );
        assert_eq!(shift, -0.5);
    }

    #[test]
    fn zeeman_shift_vanishes_for_perpendicular_spin() {
        let b = Vec3::new(0.0, 0.0, 1.7);
        let s = Vec3::new(0.31, -0.2, 0.0);
        assert_eq!(zeeman_shift(&b, &s, 2.0, 0.8), 0.0);
    }

    #[test]
    fn zeeman_shift_is_odd_in_the_spin() {
        let b = Vec3::new(0.4, -1.1, 0.9);
        let s = Vec3::new(0.1, 0.25, -0.3);
        assert_eq!(
            zeeman_shift(&b, &(-s), 2.0, 0.37),
            -zeeman_shift(&b, &s, 2.0, 0.37)
        );
    }

    #[test]
    fn zeeman_eigenstate_shifts_are_half_the_larmor_frequency() {
        let (g_s, e_abs, m_e, b3) = (2.0, 1.3, 0.7, 0.9);
        let mu_b = bohr_magneton(e_abs, m_e);
        let omega = larmor_frequency(g_s, mu_b, b3);
        let b = Vec3::new(0.0, 0.0, b3);
        let up = zeeman_shift(&b, &Vec3::new(0.0, 0.0, 0.5), g_s, mu_b);
        let down = zeeman_shift(&b, &Vec3::new(0.0, 0.0, -0.5), g_s, mu_b);
        assert!((up + omega / 2.0).abs() <= 1e-15);
        assert!((down - omega / 2.0).abs() <= 1e-15);
    }

    #[test]
    fn larmor_frequency_hand_values() {
        assert_eq!(larmor_frequency(2.0, 0.5, 2.0), 2.0);
        assert_eq!(larmor_frequency(2.0, 0.5, 0.0), 0.0);
    }

    #[test]
    fn larmor_frequency_collapses_to_e_over_m_at_g2() {
        for (e_abs, m_e, b) in [(1.0, 1.0, 0.7), (1.7, 0.3, 2.4), (0.2, 5.0, -1.1)] {
            let via_magneton = larmor_frequency(2.0, bohr_magneton(e_abs, m_e), b);
            assert_eq!(via_magneton, e_abs / m_e * b);
        }
    }

    #[test]
    fn circular_velocity_hand_values() {
        assert_eq!(circular_velocity(1.0, 2.0), 2.0);
        assert_eq!(circular_velocity(0.0, 7.3), 0.0);
        assert_eq!(circular_velocity(3.0, 0.5), 1.5);
    }

    #[test]
    fn classical_lz_hand_values() {
        let spec = ClassicalMomentSpec::new(2.0, 3.0).unwrap();
        assert_eq!(classical_lz(&spec, 0.5), 9.0);
        assert_eq!(classical_lz(&spec, 0.0), 0.0);
    }

    #[test]
    fn classical_lz_factors_through_the_velocity() {
        let spec = ClassicalMomentSpec::new(1.37, 0.82).unwrap();
        let omega = 2.19;
        assert_eq!(
            classical_lz(&spec, omega),
            spec.mass() * circular_velocity(spec.radius(), omega) * spec.radius()
        );
    }

    #[test]
    fn classical_lz_is_exactly_linear_in_omega() {
        let spec = ClassicalMomentSpec::new(0.93, 1.41).unwrap();
        assert_eq!(
            classical_lz(&spec, 2.0 * 0.61),
            2.0 * classical_lz(&spec, 0.61)
        );
    }

    #[test]
    fn moment_spec_rejects_bad_parameters() {
        assert!(ClassicalMomentSpec::new(0.0, 1.0).is_err());
        assert!(ClassicalMomentSpec::new(1.0, -2.0).is_err());
        assert!(ClassicalMomentSpec::new(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn larmor_form_hand_values() {
        assert_eq!(larmor_form_delta_s3(2.0, 3.0, &dyadic_balanced()), 3.0);
        assert_eq!(
            larmor_form_delta_s3(2.0, 3.0, &SpinAmplitudes::pure(Spin::Up)),
            0.0
        );
    }

    #[test]
    fn larmor_form_is_exactly_linear_in_omega() {
        let amps = SpinAmplitudes::from_angle(0.67);
        assert_eq!(
            larmor_form_delta_s3(2.0 * 0.83, 1.3, &amps),
            2.0 * larmor_form_delta_s3(0.83, 1.3, &amps)
        );
    }

    #[test]
    fn larmor_form_reproduces_the_closed_spin_change_bitwise_at_g2() {
        // g_s * mu_B = 2 * fl(|e| / (2 m)) = fl(|e| / m): halving and
        // doubling are exact, so both routes share every intermediate.
        let amps = SpinAmplitudes::new(C64::new(0.6, 0.0), C64::new(0.224, -0.768)).unwrap();
        for i in 0..50 {
            let e_abs = 0.1 + 0.2 * i as f64;
            let m_e = 0.3 + 0.11 * i as f64;
            let b3 = -2.0 + 0.17 * i as f64;
            let d = 0.1 + 0.09 * i as f64;
            let scenario = MagneticScenario {
                b3,
                d,
                e_abs,
                m_e,
                g_s: 2.0,
            };
            let direct = expect_delta_s3_closed(&scenario, &amps).unwrap();
            let omega = larmor_frequency(2.0, bohr_magneton(e_abs, m_e), b3);
            let larmor = larmor_form_delta_s3(omega, d, &amps);
            assert_eq!(direct, larmor, "routes split at i={i}");
        }
    }
}
