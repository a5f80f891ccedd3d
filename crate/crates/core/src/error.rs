//! Error types shared by the numerical layers.

use thiserror::Error;

/// Errors produced by spinor construction, quadrature, and the magnetic
/// interaction estimates.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// A physical or geometric parameter is outside its allowed domain
    /// (non-positive mass, empty box, even Simpson sample count, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// An integrand evaluated to NaN or infinity; reports the offending point.
    #[error("integration error: non-finite sample {value} at ({x}, {y}, {z})")]
    NonFiniteSample { value: f64, x: f64, y: f64, z: f64 },

    /// A quantity that must be real acquired an imaginary part above the
    /// internal consistency bound.
    #[error("internal consistency: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn consistency(msg: impl Into<String>) -> Self {
        Error::Consistency(msg.into())
    }
}
