//! Error type shared across the crate.

use alloc::string::String;
use thiserror::Error;

pub type Result<T> = core::result::Result<T, QslError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QslError {
    /// Model or run parameters outside their domain.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    /// An infinite sum's tail failed to drop below tolerance within the
    /// iteration budget (total-trace environment sums).
    #[error("series did not converge: {0}")]
    NonConvergence(String),
    /// Adaptive quadrature exhausted its evaluation budget before reaching
    /// the requested tolerance.
    #[error("quadrature failed: {0}")]
    QuadratureFailure(String),
    /// A formula variant was requested at a parameter point where it is
    /// singular (e.g. the frequency appearing in its denominator is zero).
    #[error("degenerate coupling: {0}")]
    DegenerateCoupling(String),
}
