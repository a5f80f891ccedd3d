//! Relativistic spin observables for free electrons in weak magnetic fields.
//!
//! The library builds Dirac plane-wave states in the chiral representation,
//! integrates their bilinear densities (probability, spin, energy) over
//! finite boxes, and evaluates first-order magnetic interaction estimates in
//! three independent ways: a closed form, a nonrelativistic-limit quadrature,
//! and the exact minimal-coupling quadrature. A small comparison layer maps
//! the same physics onto Zeeman and Larmor textbook formulas.
//!
//! Units are natural (`hbar = c = 1`); the metric signature is `(+,-,-,-)`.

pub mod cli;
pub mod comparators;
pub mod config;
pub mod error;
pub mod gamma;
pub mod magnetics;
pub mod observables;
pub mod quadrature;
pub mod report;
pub mod spinor;

pub use error::{Error, Result};

/// Complex double-precision scalar used throughout.
pub type C64 = num_complex::Complex<f64>;
/// Real 3-vector (positions, wave vectors, magnetic fields, spin vectors).
pub type Vec3 = nalgebra::Vector3<f64>;
/// Complex 4-component column (Dirac spinor storage).
pub type CVector4 = nalgebra::Vector4<C64>;
/// Complex 4x4 matrix (gamma and spin matrices).
pub type CMatrix4 = nalgebra::Matrix4<C64>;
