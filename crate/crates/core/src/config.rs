//! JSON run configuration and its validation into domain objects.
//!
//! A config file has four required blocks plus an optional `outputs` block:
//!
//! ```json
//! {
//!   "state":     { "k3": 0.1, "mass": 1.0,
//!                  "lambda_plus": [0.7071067811865476, 0.0],
//!                  "lambda_minus": [0.7071067811865476, 0.0],
//!                  "norm_volume": 1.0 },
//!   "scenario":  { "B3": 1.0, "d": 1.0 },
//!   "potential": { "variant": "uniform", "center": [0.0, 0.0, 0.0] },
//!   "grid":      { "samples_per_axis": [9, 9, 9], "rule": "simpson",
//!                  "refinement_levels": 2 },
//!   "outputs":   { "format": "csv", "path": "run.csv" }
//! }
//! ```
//!
//! Unknown keys are rejected. `scenario.e_abs`, `scenario.m_e`, and
//! `scenario.g_s` default to 1, 1, and 2. Validation happens in full before
//! any computation: every downstream invariant (amplitude completeness,
//! positive volumes, odd Simpson sample counts, ...) is checked here and
//! reported with the offending block named in the message.
//!
//! Geometry convention: the normalization box and the potential support are
//! both axis-aligned cubes anchored at the origin — side `norm_volume^(1/3)`
//! for the former, side `d` for the latter. Observable integrals run over
//! the normalization box; magnetic integrals run over the support.

use std::path::PathBuf;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::magnetics::{MagneticScenario, VectorPotentialSpec};
use crate::quadrature::{BoxRegion, QuadratureRule, RuleKind};
use crate::report::OutputFormat;
use crate::spinor::{PlaneWaveState, SpinAmplitudes};
use crate::{Vec3, C64};

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub state: StateConfig,
    pub scenario: ScenarioBlock,
    pub potential: PotentialConfig,
    pub grid: GridConfig,
    #[serde(default)]
    pub outputs: Option<OutputsConfig>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateConfig {
    pub k3: f64,
    pub mass: f64,
    /// Complex amplitude as `[re, im]`.
    pub lambda_plus: [f64; 2],
    pub lambda_minus: [f64; 2],
    pub norm_volume: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioBlock {
    #[serde(rename = "B3")]
    pub b3: f64,
    pub d: f64,
    #[serde(default = "one")]
    pub e_abs: f64,
    #[serde(default = "one")]
    pub m_e: f64,
    #[serde(default = "two")]
    pub g_s: f64,
}

fn one() -> f64 {
    1.0
}

fn two() -> f64 {
    2.0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PotentialVariant {
    /// Constant potential equal to the symmetric-gauge average over the
    /// support box.
    Uniform,
    SymmetricGauge,
    LandauGauge,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PotentialConfig {
    pub variant: PotentialVariant,
    pub center: [f64; 3],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RuleChoice {
    Midpoint,
    Simpson,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub samples_per_axis: [usize; 3],
    pub rule: RuleChoice,
    pub refinement_levels: usize,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputsConfig {
    #[serde(default)]
    pub format: Option<FormatChoice>,
    #[serde(default)]
    pub path: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormatChoice {
    Csv,
    Json,
}

impl From<FormatChoice> for OutputFormat {
    fn from(choice: FormatChoice) -> Self {
        match choice {
            FormatChoice::Csv => OutputFormat::Csv,
            FormatChoice::Json => OutputFormat::Json,
        }
    }
}

/// Everything a command needs, with all invariants already enforced.
#[derive(Debug, Clone)]
pub struct ValidatedConfig {
    pub state: PlaneWaveState,
    pub scenario: MagneticScenario,
    pub potential_variant: PotentialVariant,
    pub potential_center: Vec3,
    pub potential: VectorPotentialSpec,
    /// Support cube `[0, d]^3` of the vector potential.
    pub support: BoxRegion,
    /// Normalization cube `[0, norm_volume^(1/3)]^3`.
    pub norm_region: BoxRegion,
    pub rule: QuadratureRule,
    pub format: OutputFormat,
    pub out_path: Option<PathBuf>,
}

/// Parses the JSON text of a config file. Syntax and schema problems are
/// domain errors so the caller can map them to the validation exit code.
pub fn parse_config(text: &str) -> Result<ScenarioConfig> {
    serde_json::from_str(text).map_err(|e| Error::domain(format!("config: {e}")))
}

impl ScenarioConfig {
    /// Checks every invariant and builds the domain objects. No computation
    /// happens until this returns `Ok`.
    pub fn validate(&self) -> Result<ValidatedConfig> {
        let amplitudes = SpinAmplitudes::new(
            C64::new(self.state.lambda_plus[0], self.state.lambda_plus[1]),
            C64::new(self.state.lambda_minus[0], self.state.lambda_minus[1]),
        )
        .map_err(|e| prefixed("state.lambda_plus/lambda_minus", e))?;
        let state = PlaneWaveState::along_z(
            self.state.k3,
            self.state.mass,
            amplitudes,
            self.state.norm_volume,
        )
        .map_err(|e| prefixed("state", e))?;

        let scenario = MagneticScenario {
            b3: self.scenario.b3,
            d: self.scenario.d,
            e_abs: self.scenario.e_abs,
            m_e: self.scenario.m_e,
            g_s: self.scenario.g_s,
        };
        scenario.validate().map_err(|e| prefixed("scenario", e))?;

        let samples = self.grid.samples_per_axis;
        let support = BoxRegion::new(
            Vec3::zeros(),
            Vec3::new(scenario.d, scenario.d, scenario.d),
            samples,
        )
        .map_err(|e| prefixed("grid/scenario.d", e))?;
        let norm_side = self.state.norm_volume.cbrt();
        let norm_region = BoxRegion::new(
            Vec3::zeros(),
            Vec3::new(norm_side, norm_side, norm_side),
            samples,
        )
        .map_err(|e| prefixed("grid/state.norm_volume", e))?;

        let rule = build_rule(&self.grid)?;
        if rule.kind == RuleKind::Simpson {
            for (axis, &n) in samples.iter().enumerate() {
                if n % 2 == 0 {
                    return Err(Error::domain(format!(
                        "grid.samples_per_axis[{axis}]: Simpson needs an odd sample count, got {n}"
                    )));
                }
            }
        }

        let center = Vec3::new(
            self.potential.center[0],
            self.potential.center[1],
            self.potential.center[2],
        );
        if center.iter().any(|c| !c.is_finite()) {
            return Err(Error::domain(format!(
                "potential.center: components must be finite, got {center:?}"
            )));
        }
        let potential = build_potential(self.potential.variant, scenario.b3, support, center);

        let (format, out_path) = match &self.outputs {
            Some(outputs) => (
                outputs
                    .format
                    .map(OutputFormat::from)
                    .unwrap_or(OutputFormat::Csv),
                outputs.path.clone(),
            ),
            None => (OutputFormat::Csv, None),
        };

        Ok(ValidatedConfig {
            state,
            scenario,
            potential_variant: self.potential.variant,
            potential_center: center,
            potential,
            support,
            norm_region,
            rule,
            format,
            out_path,
        })
    }
}

fn build_rule(grid: &GridConfig) -> Result<QuadratureRule> {
    if grid.refinement_levels == 0 {
        return Err(Error::domain(
            "grid.refinement_levels: must be at least 1".to_string(),
        ));
    }
    Ok(match grid.rule {
        RuleChoice::Midpoint => QuadratureRule::midpoint(grid.refinement_levels),
        RuleChoice::Simpson => QuadratureRule::simpson(grid.refinement_levels),
    })
}

/// The gauge realization of each config variant over a given support.
pub fn build_potential(
    variant: PotentialVariant,
    b3: f64,
    support: BoxRegion,
    center: Vec3,
) -> VectorPotentialSpec {
    match variant {
        PotentialVariant::Uniform => VectorPotentialSpec::uniform_average(b3, support, center),
        PotentialVariant::SymmetricGauge => VectorPotentialSpec::symmetric(b3, support, center),
        PotentialVariant::LandauGauge => VectorPotentialSpec::landau(b3, support, center),
    }
}

fn prefixed(field: &str, e: Error) -> Error {
    match e {
        Error::Domain(msg) => Error::Domain(format!("{field}: {msg}")),
        other => other,
    }
}
