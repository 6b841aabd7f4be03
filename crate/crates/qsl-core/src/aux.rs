//! Auxiliary displacement parameters of the boson propagator.
//!
//! On a fixed-j subspace the environment part of the evolution is generated
//! by `K = beta b^dag b + gamma (b^dag + b)` and normal-orders exactly into
//!
//! `exp(-i t K) = e^{i phi} e^{-i beta t b^dag b} D(A)`,
//!
//! a rotation followed by a coherent displacement `D(A) = exp(A b^dag - A* b)`
//! with
//!
//! * `A     = zeta - i alpha = d (1 - e^{i beta t})`, `d = gamma / beta`,
//! * `alpha = gamma sin(beta t) / beta`,
//! * `zeta  = gamma (1 - cos(beta t)) / beta`,
//! * `phi   = d^2 (beta t - sin(beta t))`,
//! * `Psi   = -(alpha^2 + zeta^2) / 2 = -|A|^2 / 2` (the Gaussian overlap
//!   suppression appearing in every matrix element).
//!
//! All quantities are `2 pi / beta`-periodic up to the secular phase `phi`,
//! and every `gamma` sits in a numerator, so `gamma = 0` is regular and
//! reproduces the free evolution (`A = 0`, `phi = 0`).

use num_complex::Complex64;

use crate::error::{QslError, Result};
use crate::math;

/// Displacement parameters at a fixed time, with their time derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AuxParams {
    pub alpha: f64,
    pub zeta: f64,
    pub phi: f64,
    pub psi: f64,
    /// Complex displacement `A = zeta - i alpha`.
    pub a: Complex64,
    pub alpha_dot: f64,
    pub zeta_dot: f64,
    pub phi_dot: f64,
    pub psi_dot: f64,
    /// `dA/dt = -i gamma e^{i beta t}`.
    pub a_dot: Complex64,
}

/// Evaluate the displacement parameters for mode frequency `beta` and
/// effective coupling `gamma` at time `t`.
pub fn aux_at(beta: f64, gamma: f64, t: f64) -> AuxParams {
    let d = gamma / beta;
    let (s, c) = (math::sin(beta * t), math::cos(beta * t));
    let alpha = d * s;
    let zeta = d * (1.0 - c);
    let phi = d * d * (beta * t - s);
    let psi = -0.5 * (alpha * alpha + zeta * zeta);
    let alpha_dot = gamma * c;
    let zeta_dot = gamma * s;
    let phi_dot = d * d * beta * (1.0 - c);
    let psi_dot = -(alpha * alpha_dot + zeta * zeta_dot);
    AuxParams {
        alpha,
        zeta,
        phi,
        psi,
        a: Complex64::new(zeta, -alpha),
        alpha_dot,
        zeta_dot,
        phi_dot,
        psi_dot,
        a_dot: Complex64::new(zeta_dot, -alpha_dot),
    }
}

/// Variant of `zeta` with the roles of the two frequencies exchanged,
/// `beta (1 - cos(gamma t)) / gamma`. It breaks the displacement identity the
/// propagator obeys (see the oracle cross-check tests) and is singular at
/// `gamma = 0`; it exists only as a regression tripwire pinning down the
/// correct role assignment in [`aux_at`].
pub fn zeta_frequency_swapped(beta: f64, gamma: f64, t: f64) -> Result<f64> {
    if gamma == 0.0 {
        return Err(QslError::DegenerateCoupling(alloc::string::String::from(
            "swapped-frequency zeta divides by gamma = 0",
        )));
    }
    Ok(beta * (1.0 - math::cos(gamma * t)) / gamma)
}
