//! Bilinear field densities and their box integrals.
//!
//! Everything here consumes local field samples (value plus spatial
//! gradients). The energy density is computed along two deliberately
//! independent routes — a componentwise expansion written out by hand and a
//! symmetrized matrix form contracted with the gamma set — which must agree;
//! their comparison is one of the main self-checks of the crate.

use crate::error::{Error, Result};
use crate::gamma;
use crate::quadrature::{self, BoxRegion, IntegralResult, QuadratureRule, VectorIntegralResult};
use crate::spinor::{superposed_spinor, DiracSpinor, PlaneWaveState};
use crate::{Vec3, C64};

/// Absolute bound on imaginary residues of quantities that must be real.
pub const RESIDUE_TOL: f64 = 1e-12;

/// Local field value and its three spatial derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldSample {
    pub value: DiracSpinor,
    /// `gradients[j]` holds the derivative along axis `j + 1`.
    pub gradients: [DiracSpinor; 3],
}

/// Plane-wave field sampler at fixed time with the spatial amplitude
/// precomputed; cheap to call inside quadrature loops.
pub fn plane_wave_field(state: &PlaneWaveState, t: f64) -> Result<impl Fn(&Vec3) -> FieldSample> {
    let amplitude = superposed_spinor(state)?;
    let k = state.k();
    let e0 = state.energy_e0();
    Ok(move |x: &Vec3| {
        let phase = C64::new(0.0, k.dot(x) - e0 * t).exp();
        let value = amplitude * phase;
        let i = C64::new(0.0, 1.0);
        FieldSample {
            value,
            gradients: [value * (i * k.x), value * (i * k.y), value * (i * k.z)],
        }
    })
}

/// Samples the plane wave of `state` at time `t` and position `x`.
pub fn evaluate_field(state: &PlaneWaveState, t: f64, x: &Vec3) -> Result<FieldSample> {
    Ok(plane_wave_field(state, t)?(x))
}

/// Spin density `(s1, s2, s3)` of a spinor value:
/// `s1 = Re(psi1* psi2 + psi3* psi4)`, `s2 = Im(psi1* psi2 + psi3* psi4)`,
/// `s3 = (|psi1|^2 - |psi2|^2 + |psi3|^2 - |psi4|^2) / 2`.
pub fn spin_density(psi: &DiracSpinor) -> Vec3 {
    let cross = psi.psi1().conj() * psi.psi2() + psi.psi3().conj() * psi.psi4();
    let s3 = 0.5
        * (psi.psi1().norm_sqr() - psi.psi2().norm_sqr() + psi.psi3().norm_sqr()
            - psi.psi4().norm_sqr());
    Vec3::new(cross.re, cross.im, s3)
}

/// Nonrelativistic-limit spin density: the same combinations with the lower
/// components dropped entirely.
pub fn spin_density_nrl(psi: &DiracSpinor) -> Vec3 {
    let cross = psi.psi1().conj() * psi.psi2();
    let s3 = 0.5 * (psi.psi1().norm_sqr() - psi.psi2().norm_sqr());
    Vec3::new(cross.re, cross.im, s3)
}

/// Integrated spin vector of the state over `region` at `t = 0`.
pub fn spin_vector(
    state: &PlaneWaveState,
    region: &BoxRegion,
    rule: &QuadratureRule,
) -> Result<VectorIntegralResult> {
    let field = plane_wave_field(state, 0.0)?;
    quadrature::integrate_vector(|x| spin_density(&field(x).value), region, rule)
}

/// Real vector `(i / mass) psi^dag gamma^k psi`. The spatial gammas are
/// anti-Hermitian, so the bilinear is purely imaginary and the result real;
/// an imaginary residue above [`RESIDUE_TOL`] is reported as an error.
pub fn rho_e(psi: &DiracSpinor, mass: f64) -> Result<Vec3> {
    let g = gamma::chiral();
    let i_over_m = C64::new(0.0, 1.0 / mass);
    let mut out = Vec3::zeros();
    for k in 1..=3 {
        let bilinear = (psi.0.adjoint() * g.gamma(k) * psi.0)[(0, 0)];
        let value = i_over_m * bilinear;
        if value.im.abs() > RESIDUE_TOL {
            return Err(Error::consistency(format!(
                "rho_E component {k} has imaginary residue {:.3e}",
                value.im
            )));
        }
        out[k - 1] = value.re;
    }
    Ok(out)
}

fn grad_component(sample: &FieldSample, axis: usize, component: usize) -> C64 {
    sample.gradients[axis].0[component]
}

/// Mass term of the expanded energy density:
/// `2 m Re(psi1* psi3 + psi2* psi4)`.
pub fn mass_density_term(sample: &FieldSample, mass: f64) -> f64 {
    let psi = &sample.value;
    2.0 * mass * (psi.psi1().conj() * psi.psi3() + psi.psi2().conj() * psi.psi4()).re
}

/// Upper-block derivative term of the expanded energy density.
pub fn upper_derivative_term(sample: &FieldSample) -> f64 {
    let psi = &sample.value;
    let i = C64::new(0.0, 1.0);
    let d1 = |c: usize| grad_component(sample, 0, c);
    let d2 = |c: usize| grad_component(sample, 1, c);
    let d3 = |c: usize| grad_component(sample, 2, c);
    let inner = psi.psi1().conj() * d3(0)
        + psi.psi1().conj() * (d1(1) - i * d2(1))
        + psi.psi2().conj() * (d1(0) + i * d2(0))
        - psi.psi2().conj() * d3(1);
    -inner.im
}

/// Lower-block derivative term of the expanded energy density.
pub fn lower_derivative_term(sample: &FieldSample) -> f64 {
    let psi = &sample.value;
    let i = C64::new(0.0, 1.0);
    let d1 = |c: usize| grad_component(sample, 0, c);
    let d2 = |c: usize| grad_component(sample, 1, c);
    let d3 = |c: usize| grad_component(sample, 2, c);
    let inner = psi.psi3().conj() * d3(2)
        + psi.psi3().conj() * (d1(3) - i * d2(3))
        + psi.psi4().conj() * (d1(2) + i * d2(2))
        - psi.psi4().conj() * d3(3);
    inner.im
}

/// Energy density by the componentwise expansion (mass term plus the two
/// derivative terms).
pub fn hamiltonian_density_expanded(sample: &FieldSample, mass: f64) -> f64 {
    mass_density_term(sample, mass) + upper_derivative_term(sample) + lower_derivative_term(sample)
}

/// Energy density by the symmetrized matrix form
/// `psibar (-i/2) gamma^k d_k psi + (i/2) (d_k psibar) gamma^k psi
///  + m psibar psi`, contracted with the gamma set. Must be real; an
/// imaginary residue above [`RESIDUE_TOL`] is an internal-consistency error.
pub fn hamiltonian_density_direct(sample: &FieldSample, mass: f64) -> Result<f64> {
    let g = gamma::chiral();
    let psi = &sample.value.0;
    let psi_bar = psi.adjoint() * g.gamma(0);
    let half_i = C64::new(0.0, 0.5);
    let mut total = psi_bar * psi * C64::new(mass, 0.0);
    for k in 1..=3 {
        let grad = &sample.gradients[k - 1].0;
        let grad_bar = grad.adjoint() * g.gamma(0);
        total += psi_bar * g.gamma(k) * grad * (-half_i);
        total += grad_bar * g.gamma(k) * psi * half_i;
    }
    let value = total[(0, 0)];
    if value.im.abs() > RESIDUE_TOL {
        return Err(Error::consistency(format!(
            "energy density has imaginary residue {:.3e}",
            value.im
        )));
    }
    Ok(value.re)
}

/// Box-integrated observables of one plane-wave state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObservableReport {
    /// Total energy from the matrix-form density.
    pub total_energy: IntegralResult,
    /// Mass term of the expansion, integrated.
    pub mass_term: IntegralResult,
    /// Upper-block derivative term, integrated.
    pub upper_term: IntegralResult,
    /// Lower-block derivative term, integrated.
    pub lower_term: IntegralResult,
    /// Integrated spin vector.
    pub spin: VectorIntegralResult,
    /// Integrated probability (should be 1 when `region` is the
    /// normalization box).
    pub norm_check: IntegralResult,
}

/// Integrates energy (total and per-term), spin, and probability over
/// `region` at `t = 0`.
pub fn observable_report(
    state: &PlaneWaveState,
    region: &BoxRegion,
    rule: &QuadratureRule,
) -> Result<ObservableReport> {
    let mass = state.mass();
    let field = plane_wave_field(state, 0.0)?;
    // The direct route can fail pointwise; surface that instead of NaN.
    let direct_failure = std::cell::RefCell::new(None);
    let total_energy = quadrature::integrate_scalar(
        |x| match hamiltonian_density_direct(&field(x), mass) {
            Ok(v) => v,
            Err(e) => {
                *direct_failure.borrow_mut() = Some(e);
                f64::NAN
            }
        },
        region,
        rule,
    );
    let total_energy = match direct_failure.into_inner() {
        Some(e) => return Err(e),
        None => total_energy?,
    };
    let mass_term =
        quadrature::integrate_scalar(|x| mass_density_term(&field(x), mass), region, rule)?;
    let upper_term =
        quadrature::integrate_scalar(|x| upper_derivative_term(&field(x)), region, rule)?;
    let lower_term =
        quadrature::integrate_scalar(|x| lower_derivative_term(&field(x)), region, rule)?;
    let spin = spin_vector(state, region, rule)?;
    let norm_check =
        quadrature::integrate_scalar(|x| field(x).value.probability_density(), region, rule)?;
    Ok(ObservableReport {
        total_energy,
        mass_term,
        upper_term,
        lower_term,
        spin,
        norm_check,
    })
}
