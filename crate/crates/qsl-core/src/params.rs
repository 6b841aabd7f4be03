//! Model parameters and normalization conventions.

use alloc::format;

use crate::error::{QslError, Result};

/// Largest environment truncation accepted by the analytic pipeline. The
/// weighted sums use `1/n!` factors, so anything beyond this is pure noise.
pub const MAX_N_MAX: usize = 64;

/// Physical parameters of the dephasing spin-boson model
/// `H = omega Jz + beta b^dag b + eta (b^dag + b) J^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    /// Spin level splitting (> 0).
    pub omega: f64,
    /// Boson mode frequency (> 0).
    pub beta: f64,
    /// Bare coupling strength (>= 0).
    pub eta: f64,
    /// Spin magnitude; positive half-integer. The reduced-state metrics
    /// (fidelity, norms, speed limit) are defined for `j = 1/2`.
    pub j: f64,
    /// Environment truncation: the reference environment superposition and
    /// the weighted coherence sums run over Fock states `0..=n_max`.
    pub n_max: usize,
}

impl ModelParams {
    pub fn new(omega: f64, beta: f64, eta: f64, j: f64, n_max: usize) -> Result<Self> {
        let p = Self { omega, beta, eta, j, n_max };
        p.validate()?;
        Ok(p)
    }

    /// Weak-coupling defaults: `omega = beta = 1`, `eta = 0.1`, `j = 1/2`,
    /// vacuum-only environment reference (`n_max = 0`).
    pub fn weak_default() -> Self {
        Self { omega: 1.0, beta: 1.0, eta: 0.1, j: 0.5, n_max: 0 }
    }

    pub fn validate(&self) -> Result<()> {
        fn check(cond: bool, msg: &str) -> Result<()> {
            if cond {
                Ok(())
            } else {
                Err(QslError::InvalidParams(alloc::string::String::from(msg)))
            }
        }
        check(self.omega.is_finite() && self.omega > 0.0, "omega must be finite and > 0")?;
        check(self.beta.is_finite() && self.beta > 0.0, "beta must be finite and > 0")?;
        check(self.eta.is_finite() && self.eta >= 0.0, "eta must be finite and >= 0")?;
        let two_j = 2.0 * self.j;
        check(
            self.j.is_finite() && self.j > 0.0 && crate::math::abs(two_j - round(two_j)) < 1e-9,
            "j must be a positive half-integer",
        )?;
        if self.n_max > MAX_N_MAX {
            return Err(QslError::InvalidParams(format!(
                "n_max = {} exceeds the supported maximum {MAX_N_MAX}",
                self.n_max
            )));
        }
        Ok(())
    }

    /// Effective environment coupling on the fixed-j subspace:
    /// `gamma = eta * j * (j + 1)`.
    #[inline]
    pub fn gamma(&self) -> f64 {
        self.eta * self.j * (self.j + 1.0)
    }

    /// Spin multiplicity `2j + 1`.
    #[inline]
    pub fn spin_dim(&self) -> usize {
        round(2.0 * self.j + 1.0) as usize
    }

    /// Errors unless `j = 1/2`; the closed-form reduced-state metrics assume
    /// a two-level system.
    pub fn require_spin_half(&self) -> Result<()> {
        if crate::math::abs(self.j - 0.5) < 1e-12 {
            Ok(())
        } else {
            Err(QslError::InvalidParams(format!(
                "reduced-state metrics are defined for j = 1/2, got j = {}",
                self.j
            )))
        }
    }
}

impl Default for ModelParams {
    fn default() -> Self {
        Self::weak_default()
    }
}

/// How the reduced density matrix is normalized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NormalizationMode {
    /// Divide the weighted, truncated coherence sum by its `t = 0` value, so
    /// the reduced state starts with unit trace and the trace then follows
    /// the coherence weight `Omega(t)`.
    #[default]
    InitialUnit,
    /// Divide by the full (untruncated) norm of the evolved environment
    /// state. Unitarity keeps that norm constant, so this convention yields
    /// a trace-1, non-decaying reduced state; it is provided to make the
    /// consequence of total-trace normalization observable.
    TotalTrace,
}

// `f64::round` lives in std; this crate is no_std-compatible.
#[inline]
fn round(x: f64) -> f64 {
    #[cfg(feature = "std")]
    {
        x.round()
    }
    #[cfg(not(feature = "std"))]
    {
        libm::round(x)
    }
}
