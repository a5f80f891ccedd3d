//! Dirac spinors and free plane-wave electron states.
//!
//! Positive-energy solutions are built in the chiral representation via the
//! standard square-root construction: the upper (lower) two components carry
//! `sqrt(E + m -/+ k.sigma)` acting on a rest-frame two-spinor. At rest the
//! spin-up solution is proportional to `(1, 0, 1, 0)` and is normalized to
//! `u^dag u = 2m`.

use std::ops::{Add, Mul, Sub};

use nalgebra::{Matrix2, Vector2};

use crate::error::{Error, Result};
use crate::{CVector4, Vec3, C64};

type CMatrix2 = Matrix2<C64>;
type CVector2 = Vector2<C64>;

/// Tolerance on `|lambda_plus|^2 + |lambda_minus|^2 = 1`.
pub const COMPLETENESS_TOL: f64 = 1e-12;

/// One 4-component complex spinor value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiracSpinor(pub CVector4);

impl DiracSpinor {
    pub fn new(psi1: C64, psi2: C64, psi3: C64, psi4: C64) -> Self {
        DiracSpinor(CVector4::new(psi1, psi2, psi3, psi4))
    }

    pub fn zero() -> Self {
        DiracSpinor(CVector4::zeros())
    }

    pub fn psi1(&self) -> C64 {
        self.0[0]
    }

    pub fn psi2(&self) -> C64 {
        self.0[1]
    }

    pub fn psi3(&self) -> C64 {
        self.0[2]
    }

    pub fn psi4(&self) -> C64 {
        self.0[3]
    }

    /// `psi^dag phi`.
    pub fn dagger_dot(&self, other: &DiracSpinor) -> C64 {
        self.0.dotc(&other.0)
    }

    /// Probability density `psi^dag psi`.
    pub fn probability_density(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Upper two components as a two-spinor.
    pub fn upper(&self) -> CVector2 {
        CVector2::new(self.0[0], self.0[1])
    }

    /// Lower two components as a two-spinor.
    pub fn lower(&self) -> CVector2 {
        CVector2::new(self.0[2], self.0[3])
    }
}

impl Add for DiracSpinor {
    type Output = DiracSpinor;
    fn add(self, rhs: DiracSpinor) -> DiracSpinor {
        DiracSpinor(self.0 + rhs.0)
    }
}

impl Sub for DiracSpinor {
    type Output = DiracSpinor;
    fn sub(self, rhs: DiracSpinor) -> DiracSpinor {
        DiracSpinor(self.0 - rhs.0)
    }
}

impl Mul<C64> for DiracSpinor {
    type Output = DiracSpinor;
    fn mul(self, rhs: C64) -> DiracSpinor {
        DiracSpinor(self.0 * rhs)
    }
}

/// Spin projection along the z-axis in the rest frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spin {
    Up,
    Down,
}

impl Spin {
    fn two_spinor(self) -> CVector2 {
        match self {
            Spin::Up => CVector2::new(C64::new(1.0, 0.0), C64::new(0.0, 0.0)),
            Spin::Down => CVector2::new(C64::new(0.0, 0.0), C64::new(1.0, 0.0)),
        }
    }
}

/// Complex amplitudes `(lambda_plus, lambda_minus)` of a spin superposition,
/// constrained by completeness to the unit sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinAmplitudes {
    plus: C64,
    minus: C64,
}

impl SpinAmplitudes {
    /// Validates `|plus|^2 + |minus|^2 = 1` within [`COMPLETENESS_TOL`].
    pub fn new(plus: C64, minus: C64) -> Result<Self> {
        let total = plus.norm_sqr() + minus.norm_sqr();
        if !total.is_finite() || (total - 1.0).abs() > COMPLETENESS_TOL {
            return Err(Error::domain(format!(
                "amplitude completeness violated: |lambda+|^2 + |lambda-|^2 = {total:.17e}"
            )));
        }
        Ok(SpinAmplitudes { plus, minus })
    }

    /// Real pair `(cos(angle), sin(angle))`; normalized by construction.
    pub fn from_angle(angle: f64) -> Self {
        SpinAmplitudes {
            plus: C64::new(angle.cos(), 0.0),
            minus: C64::new(angle.sin(), 0.0),
        }
    }

    pub fn pure(spin: Spin) -> Self {
        match spin {
            Spin::Up => SpinAmplitudes {
                plus: C64::new(1.0, 0.0),
                minus: C64::new(0.0, 0.0),
            },
            Spin::Down => SpinAmplitudes {
                plus: C64::new(0.0, 0.0),
                minus: C64::new(1.0, 0.0),
            },
        }
    }

    pub fn plus(&self) -> C64 {
        self.plus
    }

    pub fn minus(&self) -> C64 {
        self.minus
    }

    /// `|lambda+|^2 - |lambda-|^2`.
    pub fn polarization(&self) -> f64 {
        self.plus.norm_sqr() - self.minus.norm_sqr()
    }
}

/// Positive-energy free electron: wave vector, mass, spin amplitudes, and the
/// box volume that normalizes the state to unit probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneWaveState {
    k: Vec3,
    mass: f64,
    amplitudes: SpinAmplitudes,
    norm_volume: f64,
    energy_e0: f64,
}

impl PlaneWaveState {
    pub fn new(k: Vec3, mass: f64, amplitudes: SpinAmplitudes, norm_volume: f64) -> Result<Self> {
        let energy_e0 = energy_of(&k, mass)?;
        if !norm_volume.is_finite() || norm_volume <= 0.0 {
            return Err(Error::domain(format!(
                "normalization volume must be positive, got {norm_volume}"
            )));
        }
        Ok(PlaneWaveState {
            k,
            mass,
            amplitudes,
            norm_volume,
            energy_e0,
        })
    }

    /// Convenience constructor for motion along the z-axis.
    pub fn along_z(
        k3: f64,
        mass: f64,
        amplitudes: SpinAmplitudes,
        norm_volume: f64,
    ) -> Result<Self> {
        PlaneWaveState::new(Vec3::new(0.0, 0.0, k3), mass, amplitudes, norm_volume)
    }

    pub fn k(&self) -> Vec3 {
        self.k
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn amplitudes(&self) -> SpinAmplitudes {
        self.amplitudes
    }

    pub fn norm_volume(&self) -> f64 {
        self.norm_volume
    }

    /// `E0 = sqrt(|k|^2 + m^2)`, fixed at construction.
    pub fn energy_e0(&self) -> f64 {
        self.energy_e0
    }
}

/// Free-particle dispersion `sqrt(|k|^2 + mass^2)`.
pub fn energy_of(k: &Vec3, mass: f64) -> Result<f64> {
    if !mass.is_finite() || mass <= 0.0 {
        return Err(Error::domain(format!("mass must be positive, got {mass}")));
    }
    Ok((k.norm_squared() + mass * mass).sqrt())
}

fn k_dot_pauli(k: &Vec3) -> CMatrix2 {
    let i = C64::new(0.0, 1.0);
    CMatrix2::new(
        C64::new(k.z, 0.0),
        C64::new(k.x, 0.0) - i * k.y,
        C64::new(k.x, 0.0) + i * k.y,
        C64::new(-k.z, 0.0),
    )
}

/// Positive-energy momentum-space spinor `u(k, spin)` with `u^dag u = 2 E0`.
pub fn u_spinor(k: &Vec3, mass: f64, spin: Spin) -> Result<DiracSpinor> {
    let e = energy_of(k, mass)?;
    // sqrt(E -/+ k.sigma) = (E + m -/+ k.sigma) / sqrt(2 (E + m)).
    let scale = C64::new(1.0 / (2.0 * (e + mass)).sqrt(), 0.0);
    let em = CMatrix2::identity() * C64::new(e + mass, 0.0);
    let ks = k_dot_pauli(k);
    let xi = spin.two_spinor();
    let upper = (em - ks) * xi * scale;
    let lower = (em + ks) * xi * scale;
    Ok(DiracSpinor::new(upper[0], upper[1], lower[0], lower[1]))
}

/// Rest-frame spinor with `u^dag u = 2 mass`; spin-up is
/// `sqrt(mass) * (1, 0, 1, 0)`.
pub fn rest_spinor(spin: Spin, mass: f64) -> Result<DiracSpinor> {
    u_spinor(&Vec3::zeros(), mass, spin)
}

/// Spatial amplitude of the state: the spin superposition of `u`-spinors
/// scaled so the plane wave carries unit probability in the box,
/// `integral_V psi^dag psi = 1`.
pub fn superposed_spinor(state: &PlaneWaveState) -> Result<DiracSpinor> {
    let up = u_spinor(&state.k(), state.mass(), Spin::Up)?;
    let down = u_spinor(&state.k(), state.mass(), Spin::Down)?;
    let norm = C64::new(
        1.0 / (2.0 * state.energy_e0() * state.norm_volume()).sqrt(),
        0.0,
    );
    Ok((up * state.amplitudes().plus() + down * state.amplitudes().minus()) * norm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::gamma_matrices;
    use crate::CMatrix4;
    use proptest::prelude::*;

    const TOL: f64 = 1e-12;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    /// `gamma^mu p_mu - m` as a matrix, with `p = (E, k)` and lower spatial
    /// indices `p_k = -k^k`.
    fn dirac_operator(k: &Vec3, mass: f64) -> CMatrix4 {
        let g = gamma_matrices();
        let e = energy_of(k, mass).unwrap();
        let mut m = g.gamma(0) * c(e, 0.0);
        for (i, kk) in [k.x, k.y, k.z].into_iter().enumerate() {
            m -= g.gamma(i + 1) * c(kk, 0.0);
        }
        m - CMatrix4::identity() * c(mass, 0.0)
    }

    fn dirac_residual(u: &DiracSpinor, k: &Vec3, mass: f64) -> f64 {
        (dirac_operator(k, mass) * u.0)
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    #[test]
    fn dispersion_examples() {
        assert_eq!(energy_of(&Vec3::zeros(), 1.0).unwrap(), 1.0);
        assert!((energy_of(&Vec3::new(0.0, 0.0, 3.0), 4.0).unwrap() - 5.0).abs() <= TOL);
        let e = energy_of(&Vec3::new(0.0, 0.0, 0.1), 1.0).unwrap();
        assert!((e - 1.01f64.sqrt()).abs() <= TOL);
    }

    #[test]
    fn dispersion_rejects_non_positive_mass() {
        assert!(energy_of(&Vec3::zeros(), 0.0).is_err());
        assert!(energy_of(&Vec3::zeros(), -2.0).is_err());
    }

    #[test]
    fn rest_spinor_up_is_one_zero_one_zero_with_norm_2m() {
        let u = rest_spinor(Spin::Up, 1.0).unwrap();
        let s = 1.0f64.sqrt();
        for (actual, expected) in u.0.iter().zip([s, 0.0, s, 0.0]) {
            assert!((actual - c(expected, 0.0)).norm() <= TOL);
        }
        assert!((u.probability_density() - 2.0).abs() <= TOL);

        let u_heavy = rest_spinor(Spin::Up, 3.7).unwrap();
        assert!((u_heavy.probability_density() - 2.0 * 3.7).abs() <= TOL);
    }

    #[test]
    fn rest_spinor_solves_the_free_equation_at_rest() {
        for spin in [Spin::Up, Spin::Down] {
            let u = rest_spinor(spin, 2.5).unwrap();
            assert!(dirac_residual(&u, &Vec3::zeros(), 2.5) <= TOL);
        }
    }

    #[test]
    fn boosted_spinors_solve_the_free_equation() {
        let ks = [
            Vec3::new(0.0, 0.0, 0.5),
            Vec3::new(0.3, -0.7, 1.1),
            Vec3::new(-2.0, 0.25, 0.0),
        ];
        for k in ks {
            for spin in [Spin::Up, Spin::Down] {
                let u = u_spinor(&k, 1.0, spin).unwrap();
                assert!(
                    dirac_residual(&u, &k, 1.0) <= TOL,
                    "residual too large at k={k:?}"
                );
                let e = energy_of(&k, 1.0).unwrap();
                assert!((u.probability_density() - 2.0 * e).abs() <= TOL);
            }
        }
    }

    #[test]
    fn up_and_down_spinors_stay_orthogonal() {
        let k = Vec3::new(0.4, -1.2, 0.9);
        let up = u_spinor(&k, 1.3, Spin::Up).unwrap();
        let down = u_spinor(&k, 1.3, Spin::Down).unwrap();
        assert!(up.dagger_dot(&down).norm() <= TOL);
    }

    #[test]
    fn z_axis_spinors_are_sigma3_eigenstates() {
        let g = gamma_matrices();
        let k = Vec3::new(0.0, 0.0, 0.8);
        let up = u_spinor(&k, 1.0, Spin::Up).unwrap();
        let down = u_spinor(&k, 1.0, Spin::Down).unwrap();
        let r_up = g.sigma(3) * up.0 - up.0;
        let r_down = g.sigma(3) * down.0 + down.0;
        assert!(r_up.iter().map(|z| z.norm()).fold(0.0, f64::max) <= TOL);
        assert!(r_down.iter().map(|z| z.norm()).fold(0.0, f64::max) <= TOL);
    }

    #[test]
    fn amplitude_completeness_is_enforced() {
        assert!(SpinAmplitudes::new(c(1.0, 0.0), c(0.1, 0.0)).is_err());
        assert!(SpinAmplitudes::new(c(0.6, 0.0), c(0.0, 0.8)).is_ok());
        let err = SpinAmplitudes::new(c(2.0, 0.0), c(0.0, 0.0)).unwrap_err();
        assert!(err.to_string().contains("completeness"));
    }

    #[test]
    fn angle_amplitudes_are_normalized() {
        for i in 0..32 {
            let a = SpinAmplitudes::from_angle(i as f64 * 0.2);
            let total = a.plus().norm_sqr() + a.minus().norm_sqr();
            assert!((total - 1.0).abs() <= COMPLETENESS_TOL);
        }
    }

    #[test]
    fn plane_wave_state_stores_consistent_energy() {
        let amps = SpinAmplitudes::pure(Spin::Up);
        let state = PlaneWaveState::along_z(0.1, 1.0, amps, 2.0).unwrap();
        let e = state.energy_e0();
        assert!((e * e - (0.01 + 1.0)).abs() <= TOL);
        assert!(PlaneWaveState::along_z(0.1, 1.0, amps, 0.0).is_err());
        assert!(PlaneWaveState::along_z(0.1, -1.0, amps, 1.0).is_err());
    }

    #[test]
    fn pure_up_superposition_at_rest_collapses_to_the_rest_spinor() {
        let state = PlaneWaveState::along_z(0.0, 1.0, SpinAmplitudes::pure(Spin::Up), 4.0).unwrap();
        let psi = superposed_spinor(&state).unwrap();
        // Proportional to (1, 0, 1, 0) and normalized to 1/V.
        assert!(psi.psi2().norm() <= TOL && psi.psi4().norm() <= TOL);
        assert!((psi.psi1() - psi.psi3()).norm() <= TOL);
        assert!((psi.probability_density() * 4.0 - 1.0).abs() <= TOL);
    }

    #[test]
    fn balanced_real_superposition_at_rest_points_along_x() {
        let amps = SpinAmplitudes::new(
            c(std::f64::consts::FRAC_1_SQRT_2, 0.0),
            c(std::f64::consts::FRAC_1_SQRT_2, 0.0),
        )
        .unwrap();
        let state = PlaneWaveState::along_z(0.0, 1.0, amps, 1.0).unwrap();
        let psi = superposed_spinor(&state).unwrap();
        let g = gamma_matrices();
        let num = (psi.0.adjoint() * g.sigma(1) * psi.0)[(0, 0)];
        let den = psi.probability_density();
        assert!((num.re / den - 1.0).abs() <= TOL);
        assert!(num.im.abs() <= TOL);
    }

    proptest! {
        #[test]
        fn random_states_solve_the_equation_and_normalize(
            kx in -3.0f64..3.0,
            ky in -3.0f64..3.0,
            kz in -3.0f64..3.0,
            mass in 0.1f64..10.0,
            theta in 0.0f64..std::f64::consts::TAU,
            phase in 0.0f64..std::f64::consts::TAU,
            volume in 0.1f64..50.0,
        ) {
            let amps = SpinAmplitudes::new(
                c(theta.cos(), 0.0),
                c(theta.sin() * phase.cos(), theta.sin() * phase.sin()),
            ).unwrap();
            let k = Vec3::new(kx, ky, kz);
            let state = PlaneWaveState::new(k, mass, amps, volume).unwrap();
            let psi = superposed_spinor(&state).unwrap();
            prop_assert!((psi.probability_density() * volume - 1.0).abs() <= 1e-12);
            // The superposition is still a positive-energy solution.
            let residual = dirac_residual(&psi, &k, mass);
            prop_assert!(residual * (2.0 * state.energy_e0() * volume).sqrt() <= 1e-11);
        }
    }
}
