//! Gamma-matrix algebra in the chiral (Weyl) representation.
//!
//! Conventions: metric `diag(+1,-1,-1,-1)`, `gamma^0` off-diagonal identity
//! blocks, spatial `gamma^k` built from Pauli blocks with the upper-right
//! block `+sigma^k`. The spin matrices `Sigma^k` are block-diagonal Pauli
//! matrices, so `Sigma^3 = diag(+1,-1,+1,-1)`.

use std::sync::LazyLock;

use nalgebra::Matrix2;

use crate::{CMatrix4, C64};

type CMatrix2 = Matrix2<C64>;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn pauli(k: usize) -> CMatrix2 {
    match k {
        1 => CMatrix2::new(c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)),
        2 => CMatrix2::new(c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)),
        3 => CMatrix2::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)),
        _ => panic!("Pauli index must be 1, 2, or 3, got {k}"),
    }
}

/// Assembles a 4x4 matrix from four 2x2 blocks, row by row.
fn from_blocks(a: CMatrix2, b: CMatrix2, d: CMatrix2, e: CMatrix2) -> CMatrix4 {
    let mut m = CMatrix4::zeros();
    m.fixed_view_mut::<2, 2>(0, 0).copy_from(&a);
    m.fixed_view_mut::<2, 2>(0, 2).copy_from(&b);
    m.fixed_view_mut::<2, 2>(2, 0).copy_from(&d);
    m.fixed_view_mut::<2, 2>(2, 2).copy_from(&e);
    m
}

/// The four gamma matrices plus the spin matrices of one representation.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaSet {
    gammas: [CMatrix4; 4],
    sigmas: [CMatrix4; 3],
}

impl GammaSet {
    /// Builds the chiral-representation set.
    pub fn chiral() -> Self {
        let zero = CMatrix2::zeros();
        let id = CMatrix2::identity();
        let gamma0 = from_blocks(zero, id, id, zero);
        let spatial = |k: usize| from_blocks(zero, pauli(k), -pauli(k), zero);
        let sigma = |k: usize| from_blocks(pauli(k), zero, zero, pauli(k));
        GammaSet {
            gammas: [gamma0, spatial(1), spatial(2), spatial(3)],
            sigmas: [sigma(1), sigma(2), sigma(3)],
        }
    }

    /// `gamma^mu` for `mu` in `0..=3`.
    pub fn gamma(&self, mu: usize) -> &CMatrix4 {
        &self.gammas[mu]
    }

    /// Spin matrix `Sigma^k` for `k` in `1..=3`.
    pub fn sigma(&self, k: usize) -> &CMatrix4 {
        assert!((1..=3).contains(&k), "spin index must be 1..=3, got {k}");
        &self.sigmas[k - 1]
    }

    /// `alpha^k = gamma^0 gamma^k` for `k` in `1..=3` (Hermitian).
    pub fn alpha(&self, k: usize) -> CMatrix4 {
        assert!((1..=3).contains(&k), "alpha index must be 1..=3, got {k}");
        self.gammas[0] * self.gammas[k]
    }

    /// Minkowski metric entry `eta^{mu nu}` matching this set's conventions.
    pub fn metric(mu: usize, nu: usize) -> f64 {
        if mu != nu {
            0.0
        } else if mu == 0 {
            1.0
        } else {
            -1.0
        }
    }
}

static CHIRAL: LazyLock<GammaSet> = LazyLock::new(GammaSet::chiral);

/// Shared chiral-representation set used by the density evaluators.
pub fn chiral() -> &'static GammaSet {
    &CHIRAL
}

/// Returns a fresh chiral-representation gamma set.
pub fn gamma_matrices() -> GammaSet {
    GammaSet::chiral()
}
