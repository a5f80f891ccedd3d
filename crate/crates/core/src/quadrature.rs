//! Deterministic quadrature over axis-aligned boxes.
//!
//! Two rules are provided: composite Simpson (tensor product, odd sample
//! counts per axis) and the midpoint rule on uniform cells, which serves as
//! an independent cross-check. Each refinement level halves the grid
//! spacing; the error estimate is the Richardson comparison of the two
//! finest levels (`|v_fine - v_coarse| / 15` for Simpson, `/ 3` for
//! midpoint). Samples are reduced by a pairwise sum over a fixed cell
//! ordering so results are bit-reproducible run to run.

use std::ops::Add;

use crate::error::{Error, Result};
use crate::Vec3;

/// Axis-aligned box with a base sampling resolution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoxRegion {
    origin: Vec3,
    side_lengths: Vec3,
    samples_per_axis: [usize; 3],
}

impl BoxRegion {
    pub fn new(origin: Vec3, side_lengths: Vec3, samples_per_axis: [usize; 3]) -> Result<Self> {
        for (axis, side) in side_lengths.iter().enumerate() {
            if !side.is_finite() || *side <= 0.0 {
                return Err(Error::domain(format!(
                    "box side length along axis {axis} must be positive, got {side}"
                )));
            }
        }
        for (axis, n) in samples_per_axis.iter().enumerate() {
            if *n < 3 {
                return Err(Error::domain(format!(
                    "samples per axis must be at least 3, got {n} on axis {axis}"
                )));
            }
        }
        if !origin.iter().all(|v| v.is_finite()) {
            return Err(Error::domain("box origin must be finite".to_string()));
        }
        Ok(BoxRegion {
            origin,
            side_lengths,
            samples_per_axis,
        })
    }

    /// Cube of side `side` with one corner at `origin`.
    pub fn cube(origin: Vec3, side: f64, samples: usize) -> Result<Self> {
        BoxRegion::new(
            origin,
            Vec3::new(side, side, side),
            [samples, samples, samples],
        )
    }

    pub fn origin(&self) -> Vec3 {
        self.origin
    }

    pub fn side_lengths(&self) -> Vec3 {
        self.side_lengths
    }

    pub fn samples_per_axis(&self) -> [usize; 3] {
        self.samples_per_axis
    }

    pub fn volume(&self) -> f64 {
        self.side_lengths.x * self.side_lengths.y * self.side_lengths.z
    }

    pub fn centroid(&self) -> Vec3 {
        self.origin + self.side_lengths * 0.5
    }

    pub fn contains(&self, x: &Vec3) -> bool {
        (0..3).all(|a| x[a] >= self.origin[a] && x[a] <= self.origin[a] + self.side_lengths[a])
    }
}

/// Quadrature rule family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleKind {
    Midpoint,
    Simpson,
}

/// Rule plus the number of spacing-halving refinement levels (at least 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadratureRule {
    pub kind: RuleKind,
    pub refinement_levels: usize,
}

impl QuadratureRule {
    pub fn simpson(refinement_levels: usize) -> Self {
        QuadratureRule {
            kind: RuleKind::Simpson,
            refinement_levels,
        }
    }

    pub fn midpoint(refinement_levels: usize) -> Self {
        QuadratureRule {
            kind: RuleKind::Midpoint,
            refinement_levels,
        }
    }

    fn richardson_denominator(&self) -> f64 {
        match self.kind {
            RuleKind::Simpson => 15.0,
            RuleKind::Midpoint => 3.0,
        }
    }
}

/// Scalar quadrature value with its Richardson error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralResult {
    pub value: f64,
    pub error_estimate: f64,
    pub levels_used: usize,
}

/// Componentwise quadrature of a vector field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VectorIntegralResult {
    pub value: Vec3,
    pub error_estimate: Vec3,
    pub levels_used: usize,
}

impl VectorIntegralResult {
    /// Largest componentwise error estimate.
    pub fn max_error(&self) -> f64 {
        self.error_estimate.iter().fold(0.0, |a, b| a.max(*b))
    }
}

/// One row of a refinement study: spacing, value, Richardson estimate
/// (zero on the coarsest row, which has no coarser neighbor).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub spacing: f64,
    pub value: f64,
    pub error_estimate: f64,
}

const PAIRWISE_BASE: usize = 32;

/// Pairwise (tree) reduction with a fixed association order.
fn pairwise_sum<T: Copy + Add<Output = T>>(xs: &[T]) -> T {
    debug_assert!(!xs.is_empty());
    if xs.len() <= PAIRWISE_BASE {
        let mut acc = xs[0];
        for &x in &xs[1..] {
            acc = acc + x;
        }
        acc
    } else {
        let mid = xs.len() / 2;
        pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
    }
}

fn simpson_weight(i: usize, n: usize) -> f64 {
    if i == 0 || i == n - 1 {
        1.0
    } else if i % 2 == 1 {
        4.0
    } else {
        2.0
    }
}

fn validate(rule: &QuadratureRule, region: &BoxRegion) -> Result<()> {
    if rule.refinement_levels < 1 {
        return Err(Error::domain(
            "quadrature rule needs at least one refinement level".to_string(),
        ));
    }
    if rule.kind == RuleKind::Simpson {
        for (axis, n) in region.samples_per_axis.iter().enumerate() {
            if n % 2 == 0 {
                return Err(Error::domain(format!(
                    "Simpson rule requires an odd sample count per axis, got {n} on axis {axis}"
                )));
            }
        }
    }
    Ok(())
}

/// Sample counts after `level` spacing halvings.
fn level_samples(kind: RuleKind, base: [usize; 3], level: usize) -> [usize; 3] {
    let mut out = base;
    for n in &mut out {
        for _ in 0..level {
            *n = match kind {
                // 2n - 1 points keeps the count odd and halves the spacing.
                RuleKind::Simpson => 2 * *n - 1,
                // Midpoint counts cells; doubling halves each cell.
                RuleKind::Midpoint => 2 * *n,
            };
        }
    }
    out
}

fn check_finite(value: f64, point: &Vec3) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFiniteSample {
            value,
            x: point.x,
            y: point.y,
            z: point.z,
        })
    }
}

/// Evaluates one level. `combine` folds the weighted samples; scaling by the
/// cell volume happens after the reduction so constants stay exact on
/// power-of-two grids.
fn eval_level<F>(
    sampler: &F,
    region: &BoxRegion,
    kind: RuleKind,
    samples: [usize; 3],
) -> Result<f64>
where
    F: Fn(&Vec3) -> f64,
{
    let mut weighted = Vec::with_capacity(samples[0] * samples[1] * samples[2]);
    match kind {
        RuleKind::Simpson => {
            let h: Vec<f64> = (0..3)
                .map(|a| region.side_lengths[a] / (samples[a] - 1) as f64)
                .collect();
            for i in 0..samples[0] {
                let wi = simpson_weight(i, samples[0]);
                let x = region.origin.x + i as f64 * h[0];
                for j in 0..samples[1] {
                    let wij = wi * simpson_weight(j, samples[1]);
                    let y = region.origin.y + j as f64 * h[1];
                    for l in 0..samples[2] {
                        let w = wij * simpson_weight(l, samples[2]);
                        let point = Vec3::new(x, y, region.origin.z + l as f64 * h[2]);
                        weighted.push(w * check_finite(sampler(&point), &point)?);
                    }
                }
            }
            let sum = pairwise_sum(&weighted);
            Ok(sum * (h[0] * h[1] * h[2]) / 27.0)
        }
        RuleKind::Midpoint => {
            let h: Vec<f64> = (0..3)
                .map(|a| region.side_lengths[a] / samples[a] as f64)
                .collect();
            for i in 0..samples[0] {
                let x = region.origin.x + (i as f64 + 0.5) * h[0];
                for j in 0..samples[1] {
                    let y = region.origin.y + (j as f64 + 0.5) * h[1];
                    for l in 0..samples[2] {
                        let point = Vec3::new(x, y, region.origin.z + (l as f64 + 0.5) * h[2]);
                        weighted.push(check_finite(sampler(&point), &point)?);
                    }
                }
            }
            let sum = pairwise_sum(&weighted);
            Ok(sum * (h[0] * h[1] * h[2]))
        }
    }
}

/// Integrates a scalar field over the box, refining `rule.refinement_levels`
/// times; returns the finest-level value.
pub fn integrate_scalar<F>(
    sampler: F,
    region: &BoxRegion,
    rule: &QuadratureRule,
) -> Result<IntegralResult>
where
    F: Fn(&Vec3) -> f64,
{
    validate(rule, region)?;
    let mut previous = None;
    let mut value = 0.0;
    for level in 0..rule.refinement_levels {
        let samples = level_samples(rule.kind, region.samples_per_axis, level);
        let v = eval_level(&sampler, region, rule.kind, samples)?;
        if level > 0 {
            previous = Some(value);
        }
        value = v;
    }
    let error_estimate = match previous {
        Some(prev) => (value - prev).abs() / rule.richardson_denominator(),
        None => 0.0,
    };
    Ok(IntegralResult {
        value,
        error_estimate,
        levels_used: rule.refinement_levels,
    })
}

/// Componentwise version of [`integrate_scalar`] with a single field sweep
/// per level (the sampler runs once per grid point).
pub fn integrate_vector<F>(
    sampler: F,
    region: &BoxRegion,
    rule: &QuadratureRule,
) -> Result<VectorIntegralResult>
where
    F: Fn(&Vec3) -> Vec3,
{
    validate(rule, region)?;
    let mut previous: Option<Vec3> = None;
    let mut value = Vec3::zeros();
    for level in 0..rule.refinement_levels {
        let samples = level_samples(rule.kind, region.samples_per_axis, level);
        let v = eval_level_vector(&sampler, region, rule.kind, samples)?;
        if level > 0 {
            previous = Some(value);
        }
        value = v;
    }
    let error_estimate = match previous {
        Some(prev) => (value - prev).abs() / rule.richardson_denominator(),
        None => Vec3::zeros(),
    };
    Ok(VectorIntegralResult {
        value,
        error_estimate,
        levels_used: rule.refinement_levels,
    })
}

fn eval_level_vector<F>(
    sampler: &F,
    region: &BoxRegion,
    kind: RuleKind,
    samples: [usize; 3],
) -> Result<Vec3>
where
    F: Fn(&Vec3) -> Vec3,
{
    let check = |v: Vec3, point: &Vec3| -> Result<Vec3> {
        for comp in v.iter() {
            if !comp.is_finite() {
                return Err(Error::NonFiniteSample {
                    value: *comp,
                    x: point.x,
                    y: point.y,
                    z: point.z,
                });
            }
        }
        Ok(v)
    };
    let mut weighted = Vec::with_capacity(samples[0] * samples[1] * samples[2]);
    match kind {
        RuleKind::Simpson => {
            let h: Vec<f64> = (0..3)
                .map(|a| region.side_lengths[a] / (samples[a] - 1) as f64)
                .collect();
            for i in 0..samples[0] {
                let wi = simpson_weight(i, samples[0]);
                let x = region.origin.x + i as f64 * h[0];
                for j in 0..samples[1] {
                    let wij = wi * simpson_weight(j, samples[1]);
                    let y = region.origin.y + j as f64 * h[1];
                    for l in 0..samples[2] {
                        let w = wij * simpson_weight(l, samples[2]);
                        let point = Vec3::new(x, y, region.origin.z + l as f64 * h[2]);
                        weighted.push(check(sampler(&point), &point)? * w);
                    }
                }
            }
            let sum = pairwise_sum(&weighted);
            Ok(sum * ((h[0] * h[1] * h[2]) / 27.0))
        }
        RuleKind::Midpoint => {
            let h: Vec<f64> = (0..3)
                .map(|a| region.side_lengths[a] / samples[a] as f64)
                .collect();
            for i in 0..samples[0] {
                let x = region.origin.x + (i as f64 + 0.5) * h[0];
                for j in 0..samples[1] {
                    let y = region.origin.y + (j as f64 + 0.5) * h[1];
                    for l in 0..samples[2] {
                        let point = Vec3::new(x, y, region.origin.z + (l as f64 + 0.5) * h[2]);
                        weighted.push(check(sampler(&point), &point)?);
                    }
                }
            }
            let sum = pairwise_sum(&weighted);
            Ok(sum * (h[0] * h[1] * h[2]))
        }
    }
}

/// Evaluates the integral at `levels` successive refinements and reports one
/// row per level. Needs at least two levels to produce error estimates.
pub fn convergence_study<F>(
    sampler: F,
    region: &BoxRegion,
    rule: &QuadratureRule,
    levels: usize,
) -> Result<Vec<ConvergenceRow>>
where
    F: Fn(&Vec3) -> f64,
{
    if levels < 2 {
        return Err(Error::domain(
            "convergence study needs at least two levels".to_string(),
        ));
    }
    validate(rule, region)?;
    let mut rows = Vec::with_capacity(levels);
    let mut prev: Option<f64> = None;
    for level in 0..levels {
        let samples = level_samples(rule.kind, region.samples_per_axis, level);
        let value = eval_level(&sampler, region, rule.kind, samples)?;
        let spacing = (0..3)
            .map(|a| match rule.kind {
                RuleKind::Simpson => region.side_lengths[a] / (samples[a] - 1) as f64,
                RuleKind::Midpoint => region.side_lengths[a] / samples[a] as f64,
            })
            .fold(0.0f64, f64::max);
        let error_estimate = match prev {
            Some(p) => (value - p).abs() / rule.richardson_denominator(),
            None => 0.0,
        };
        rows.push(ConvergenceRow {
            spacing,
            value,
            error_estimate,
        });
        prev = Some(value);
    }
    Ok(rows)
}
