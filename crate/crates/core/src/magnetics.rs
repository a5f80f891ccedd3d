//! First-order magnetic interaction estimates for free-electron states.
//!
//! Three routes to the same physics are kept deliberately separate:
//!
//! * closed forms proportional to `B3 * d * CI` (with `CI` the chirality
//!   index of the spin amplitudes),
//! * a nonrelativistic-limit quadrature `-4 |e| integral A . s'` over the
//!   potential support,
//! * the exact minimal-coupling quadrature `q integral psi^dag alpha^k psi
//!   A_k` with charge `q = -|e|` (the electron's negative charge; this sign
//!   convention is applied verbatim and surfaces only as an overall sign).
//!
//! Quadrature coefficients depend on the gauge and on where the support box
//! sits relative to the gauge center, so comparisons against the closed
//! forms are reported as measured ratios rather than asserted equalities.

use crate::error::{Error, Result};
use crate::gamma;
use crate::observables::{plane_wave_field, rho_e, spin_density_nrl, RESIDUE_TOL};
use crate::quadrature::{self, BoxRegion, IntegralResult, QuadratureRule, VectorIntegralResult};
use crate::spinor::{DiracSpinor, PlaneWaveState, SpinAmplitudes};
use crate::{Vec3, C64};

/// Tolerance for the equal-spin-probability check in ensembles.
pub const EQUAL_PROBABILITY_TOL: f64 = 1e-12;

/// Gauge choices for a uniform field `B = (0, 0, B3)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PotentialKind {
    /// Constant vector inside the support box.
    Uniform { a: Vec3 },
    /// `A = (1/2) B x (x - center)`.
    SymmetricGauge,
    /// `A = (0, B3 (x1 - center1), 0)`.
    LandauGauge,
}

/// A vector potential with compact support: the gauge formula applies inside
/// the support box and `A = 0` outside.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VectorPotentialSpec {
    pub kind: PotentialKind,
    pub b3: f64,
    pub support: BoxRegion,
    pub center: Vec3,
}

impl VectorPotentialSpec {
    /// Uniform potential equal to the average of the symmetric gauge over
    /// the support box, `(1/2) B x (centroid - center)`. This realizes the
    /// "field close to its average over the interaction region" picture
    /// behind the closed forms.
    pub fn uniform_average(b3: f64, support: BoxRegion, center: Vec3) -> Self {
        let b = Vec3::new(0.0, 0.0, b3);
        let a = b.cross(&(support.centroid() - center)) * 0.5;
        VectorPotentialSpec {
            kind: PotentialKind::Uniform { a },
            b3,
            support,
            center,
        }
    }

    /// Uniform potential with an explicitly chosen constant.
    pub fn uniform_constant(a: Vec3, support: BoxRegion) -> Self {
        VectorPotentialSpec {
            kind: PotentialKind::Uniform { a },
            b3: 0.0,
            support,
            center: support.centroid(),
        }
    }

    pub fn symmetric(b3: f64, support: BoxRegion, center: Vec3) -> Self {
        VectorPotentialSpec {
            kind: PotentialKind::SymmetricGauge,
            b3,
            support,
            center,
        }
    }

    pub fn landau(b3: f64, support: BoxRegion, center: Vec3) -> Self {
        VectorPotentialSpec {
            kind: PotentialKind::LandauGauge,
            b3,
            support,
            center,
        }
    }

    /// The potential at `x`; zero outside the support box.
    pub fn vector_potential_at(&self, x: &Vec3) -> Vec3 {
        if !self.support.contains(x) {
            return Vec3::zeros();
        }
        match self.kind {
            PotentialKind::Uniform { a } => a,
            PotentialKind::SymmetricGauge => {
                let b = Vec3::new(0.0, 0.0, self.b3);
                b.cross(&(x - self.center)) * 0.5
            }
            PotentialKind::LandauGauge => Vec3::new(0.0, self.b3 * (x.x - self.center.x), 0.0),
        }
    }
}

/// Field strength, interaction-region size, and physical constants of one
/// magnetic setup. Natural units; `mu_B = e_abs / (2 m_e)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MagneticScenario {
    pub b3: f64,
    /// Linear side of the cubic interaction region.
    pub d: f64,
    pub e_abs: f64,
    pub m_e: f64,
    pub g_s: f64,
}

impl Default for MagneticScenario {
    fn default() -> Self {
        MagneticScenario {
            b3: 0.0,
            d: 1.0,
            e_abs: 1.0,
            m_e: 1.0,
            g_s: 2.0,
        }
    }
}

impl MagneticScenario {
    pub fn new(b3: f64, d: f64) -> Result<Self> {
        let scenario = MagneticScenario {
            b3,
            d,
            ..Default::default()
        };
        scenario.validate()?;
        Ok(scenario)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.b3.is_finite() {
            return Err(Error::domain(format!("B3 must be finite, got {}", self.b3)));
        }
        if !self.d.is_finite() || self.d <= 0.0 {
            return Err(Error::domain(format!(
                "interaction size d must be positive, got {}",
                self.d
            )));
        }
        if !self.e_abs.is_finite() || self.e_abs <= 0.0 {
            return Err(Error::domain(format!(
                "|e| must be positive, got {}",
                self.e_abs
            )));
        }
        if !self.m_e.is_finite() || self.m_e <= 0.0 {
            return Err(Error::domain(format!(
                "electron mass must be positive, got {}",
                self.m_e
            )));
        }
        if !self.g_s.is_finite() {
            return Err(Error::domain(format!(
                "g_s must be finite, got {}",
                self.g_s
            )));
        }
        Ok(())
    }
}

/// Chirality index `CI = Re(l+ conj(l-)) + Im(l+ conj(l-))`.
///
/// Vanishes for fully polarized states; over real amplitude pairs its range
/// is `[-1/2, +1/2]`, attained at `l+ = l- = +-1/sqrt(2)` (minus sign on one
/// amplitude for the minimum). Over complex pairs the supremum grows to
/// `1/sqrt(2)` because the two terms can be made to add coherently.
pub fn chirality_index(amplitudes: &SpinAmplitudes) -> f64 {
    let w = amplitudes.plus() * amplitudes.minus().conj();
    w.re + w.im
}

/// Closed-form spin-change estimate `(|e| / m_e) B3 d CI`.
pub fn expect_delta_s3_closed(
    scenario: &MagneticScenario,
    amplitudes: &SpinAmplitudes,
) -> Result<f64> {
    scenario.validate()?;
    Ok(scenario.e_abs / scenario.m_e * scenario.b3 * scenario.d * chirality_index(amplitudes))
}

/// Closed-form energy-change estimate `(2 m_e |e| / E0) B3 d CI`.
/// `energy_e0` must be at least the electron mass.
pub fn expect_delta_h_closed(
    scenario: &MagneticScenario,
    energy_e0: f64,
    amplitudes: &SpinAmplitudes,
) -> Result<f64> {
    scenario.validate()?;
    if !energy_e0.is_finite() || energy_e0 < scenario.m_e {
        return Err(Error::domain(format!(
            "E0 = {energy_e0} below the electron mass {}",
            scenario.m_e
        )));
    }
    Ok(2.0 * scenario.m_e * scenario.e_abs / energy_e0
        * scenario.b3
        * scenario.d
        * chirality_index(amplitudes))
}

/// Amplitudes maximizing the chirality index. With `require_real` set this
/// is the equal real pair `(1/sqrt(2), 1/sqrt(2))` with `CI = 1/2`; without
/// the restriction a relative phase of `-pi/4` pushes `CI` to `1/sqrt(2)`.
pub fn maximal_absorption_amplitudes(require_real: bool) -> SpinAmplitudes {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    if require_real {
        SpinAmplitudes::new(C64::new(r, 0.0), C64::new(r, 0.0))
            .expect("equal real pair satisfies completeness")
    } else {
        let minus = C64::from_polar(r, -std::f64::consts::FRAC_PI_4);
        SpinAmplitudes::new(C64::new(r, 0.0), minus)
            .expect("unit-modulus pair satisfies completeness")
    }
}

/// Nonrelativistic-limit energy change `-4 |e| integral A . s'` for an
/// arbitrary spinor field.
pub fn delta_h_nrl_of_field<F>(
    field: F,
    potential: &VectorPotentialSpec,
    e_abs: f64,
    region: &BoxRegion,
    rule: &QuadratureRule,
) -> Result<IntegralResult>
where
    F: Fn(&Vec3) -> DiracSpinor,
{
    quadrature::integrate_scalar(
        |x| {
            let a = potential.vector_potential_at(x);
            -4.0 * e_abs * a.dot(&spin_density_nrl(&field(x)))
        },
        region,
        rule,
    )
}

/// [`delta_h_nrl_of_field`] applied to a plane-wave state at `t = 0`.
pub fn delta_h_nrl(
    state: &PlaneWaveState,
    potential: &VectorPotentialSpec,
    scenario: &MagneticScenario,
    region: &BoxRegion,
    rule: &QuadratureRule,
) -> Result<IntegralResult> {
    scenario.validate()?;
    let field = plane_wave_field(state, 0.0)?;
    delta_h_nrl_of_field(
        move |x| field(x).value,
        potential,
        scenario.e_abs,
        region,
        rule,
    )
}

/// Spin-vector change `|e| integral A x rho_E` for an arbitrary spinor
/// field, with `rho_E = (i / mass) psi^dag gamma psi`.
pub fn delta_s_of_field<F>(
    field: F,
    potential: &VectorPotentialSpec,
    e_abs: f64,
    mass: f64,
    region: &BoxRegion,
    rule: &QuadratureRule,
) -> Result<VectorIntegralResult>
where
    F: Fn(&Vec3) -> DiracSpinor,
{
    let failure = std::cell::RefCell::new(None);
    let result = quadrature::integrate_vector(
        |x| match rho_e(&field(x), mass) {
            Ok(rho) => potential.vector_potential_at(x).cross(&rho) * e_abs,
            Err(e) => {
                *failure.borrow_mut() = Some(e);
                Vec3::new(f64::NAN, f64::NAN, f64::NAN)
            }
        },
        region,
        rule,
    );
    match failure.into_inner() {
        Some(e) => Err(e),
        None => result,
    }
}

/// [`delta_s_of_field`] applied to a plane-wave state at `t = 0`.
pub fn delta_s(
    state: &PlaneWaveState,
    potential: &VectorPotentialSpec,
    scenario: &MagneticScenario,
    region: &BoxRegion,
    rule: &QuadratureRule,
) -> Result<VectorIntegralResult> {
    scenario.validate()?;
    let field = plane_wave_field(state, 0.0)?;
    delta_s_of_field(
        move |x| field(x).value,
        potential,
        scenario.e_abs,
        state.mass(),
        region,
        rule,
    )
}

/// Exact minimal-coupling energy change `q integral psi^dag alpha^k psi A_k`
/// with `q = -|e|`. The bilinear is real (`alpha^k` Hermitian); imaginary
/// residues above [`RESIDUE_TOL`] are internal-consistency errors.
pub fn delta_h_exact_of_field<F>(
    field: F,
    potential: &VectorPotentialSpec,
    e_abs: f64,
    region: &BoxRegion,
    rule: &QuadratureRule,
) -> Result<IntegralResult>
where
    F: Fn(&Vec3) -> DiracSpinor,
{
    let g = gamma::chiral();
    let alphas = [g.alpha(1), g.alpha(2), g.alpha(3)];
    let failure = std::cell::RefCell::new(None);
    let result = quadrature::integrate_scalar(
        |x| {
            let a = potential.vector_potential_at(x);
            let psi = field(x);
            let mut coupling = 0.0;
            for k in 0..3 {
                let bilinear = (psi.0.adjoint() * alphas[k] * psi.0)[(0, 0)];
                if bilinear.im.abs() > RESIDUE_TOL {
                    *failure.borrow_mut() = Some(Error::consistency(format!(
                        "alpha^{} bilinear has imaginary residue {:.3e}",
                        k + 1,
                        bilinear.im
                    )));
                    return f64::NAN;
                }
                coupling += a[k] * bilinear.re;
            }
            -e_abs * coupling
        },
        region,
        rule,
    );
    match failure.into_inner() {
        Some(e) => Err(e),
        None => result,
    }
}

/// [`delta_h_exact_of_field`] applied to a plane-wave state at `t = 0`.
pub fn delta_h_exact(
    state: &PlaneWaveState,
    potential: &VectorPotentialSpec,
    scenario: &MagneticScenario,
    region: &BoxRegion,
    rule: &QuadratureRule,
) -> Result<IntegralResult> {
    scenario.validate()?;
    let field = plane_wave_field(state, 0.0)?;
    delta_h_exact_of_field(
        move |x| field(x).value,
        potential,
        scenario.e_abs,
        region,
        rule,
    )
}

/// Closed-form effects for one electron of an ensemble.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElectronEffect {
    pub delta_s3: f64,
    pub delta_h: f64,
    pub chirality_index: f64,
    /// True when `|l+| = |l-|` within [`EQUAL_PROBABILITY_TOL`]; electrons
    /// failing this check are flagged for attention, not rejected.
    pub equal_spin_probability: bool,
}

/// Per-electron effects and their plain sums (no inter-electron terms).
#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleResult {
    pub per_electron: Vec<ElectronEffect>,
    pub total_delta_s3: f64,
    pub total_delta_h: f64,
}

/// Applies the closed forms to each electron independently and sums the
/// results in input order.
pub fn ensemble_apply(
    states: &[PlaneWaveState],
    scenario: &MagneticScenario,
) -> Result<EnsembleResult> {
    scenario.validate()?;
    let mut per_electron = Vec::with_capacity(states.len());
    for state in states {
        let amplitudes = state.amplitudes();
        per_electron.push(ElectronEffect {
            delta_s3: expect_delta_s3_closed(scenario, &amplitudes)?,
            delta_h: expect_delta_h_closed(scenario, state.energy_e0(), &amplitudes)?,
            chirality_index: chirality_index(&amplitudes),
            equal_spin_probability: amplitudes.polarization().abs() <= EQUAL_PROBABILITY_TOL,
        });
    }
    let mut total_delta_s3 = 0.0;
    let mut total_delta_h = 0.0;
    for effect in &per_electron {
        total_delta_s3 += effect.delta_s3;
        total_delta_h += effect.delta_h;
    }
    Ok(EnsembleResult {
        per_electron,
        total_delta_s3,
        total_delta_h,
    })
}
