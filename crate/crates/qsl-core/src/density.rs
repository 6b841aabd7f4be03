//! Reduced spin density matrix and its time derivative.
//!
//! On the fixed-j subspace the coupling commutes with every spin operator,
//! so the reduced matrix keeps its initial uniform structure and only the
//! coherences rotate and lose weight:
//!
//! `rho[m1, m2](t) = e^{-i omega (m1 - m2) t} Omega(t) / (2j + 1)`,
//!
//! with `Omega` from [`crate::env`]. Row `r` of the matrix corresponds to
//! magnetic number `m = j - r`. In INITIAL-UNIT normalization the trace
//! equals `Omega(t)`; in TOTAL-TRACE it equals 1.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::env::CoherenceWeight;
use crate::error::{QslError, Result};
use crate::math;
use crate::params::{ModelParams, NormalizationMode};

/// Dense Hermitian matrix on the spin space, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedDensity {
    dim: usize,
    elems: Vec<Complex64>,
}

impl ReducedDensity {
    pub fn from_elems(dim: usize, elems: Vec<Complex64>) -> Result<Self> {
        if elems.len() != dim * dim {
            return Err(QslError::InvalidParams(format!(
                "expected {} elements for a {dim}x{dim} matrix, got {}",
                dim * dim,
                elems.len()
            )));
        }
        Ok(Self { dim, elems })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.elems[row * self.dim + col]
    }

    pub fn elems(&self) -> &[Complex64] {
        &self.elems
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// Largest entrywise deviation from Hermiticity.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..self.dim {
            for c in 0..self.dim {
                let d = self.get(r, c) - self.get(c, r).conj();
                worst = worst.max(math::hypot(d.re, d.im));
            }
        }
        worst
    }

    /// Largest entrywise absolute difference against another matrix.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst = 0.0f64;
        for (a, b) in self.elems.iter().zip(other.elems.iter()) {
            let d = a - b;
            worst = worst.max(math::hypot(d.re, d.im));
        }
        worst
    }

    pub fn determinant_2x2(&self) -> Result<Complex64> {
        if self.dim != 2 {
            return Err(QslError::InvalidParams(String::from(
                "determinant_2x2 requires a 2x2 matrix",
            )));
        }
        Ok(self.get(0, 0) * self.get(1, 1) - self.get(0, 1) * self.get(1, 0))
    }
}

/// How `d rho / dt` is evaluated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DerivativeScheme {
    /// Closed-form derivative (ladder identity for `dOmega/dt`).
    Analytic,
    /// Symmetric difference `(rho(t+h) - rho(t-h)) / 2h`; cross-check only.
    FiniteDiff { h: f64 },
}

impl Default for DerivativeScheme {
    fn default() -> Self {
        Self::Analytic
    }
}

pub(crate) fn assemble(
    params: &ModelParams,
    t: f64,
    omega_val: f64,
    omega_dot: f64,
    dotted: bool,
) -> ReducedDensity {
    let dim = params.spin_dim();
    let mut elems = vec![Complex64::new(0.0, 0.0); dim * dim];
    let share = 1.0 / dim as f64;
    for r in 0..dim {
        let m1 = params.j - r as f64;
        for c in 0..dim {
            let m2 = params.j - c as f64;
            let dm = m1 - m2;
            let phase = math::cis(-params.omega * dm * t);
            let val = if dotted {
                // d/dt [e^{-i w dm t} Omega] = e^{-i w dm t} (Omega' - i w dm Omega)
                phase * Complex64::new(omega_dot, -params.omega * dm * omega_val)
            } else {
                phase * omega_val
            };
            elems[r * dim + c] = val * share;
        }
    }
    ReducedDensity { dim, elems }
}

/// Reduced density matrix at time `t`.
pub fn rho_s(params: &ModelParams, t: f64, mode: NormalizationMode) -> Result<ReducedDensity> {
    let weight = CoherenceWeight::new(params, mode)?;
    let (omega_val, _) = weight.eval(t)?;
    Ok(assemble(params, t, omega_val, 0.0, false))
}

/// Time derivative of the reduced density matrix at `t`.
pub fn drho_dt(
    params: &ModelParams,
    t: f64,
    mode: NormalizationMode,
    scheme: DerivativeScheme,
) -> Result<ReducedDensity> {
    match scheme {
        DerivativeScheme::Analytic => {
            let weight = CoherenceWeight::new(params, mode)?;
            let (omega_val, omega_dot) = weight.eval(t)?;
            Ok(assemble(params, t, omega_val, omega_dot, true))
        }
        DerivativeScheme::FiniteDiff { h } => {
            if !(h.is_finite() && h > 0.0) {
                return Err(QslError::InvalidParams(format!(
                    "finite-difference step must be finite and > 0, got {h}"
                )));
            }
            let plus = rho_s(params, t + h, mode)?;
            let minus = rho_s(params, t - h, mode)?;
            let dim = plus.dim;
            let inv = 1.0 / (2.0 * h);
            let elems = plus
                .elems
                .iter()
                .zip(minus.elems.iter())
                .map(|(p, m)| (p - m) * inv)
                .collect();
            Ok(ReducedDensity { dim, elems })
        }
    }
}

/// Eigenvalues of a Hermitian 2x2 matrix, sorted descending:
/// `(a + d)/2 +- sqrt(((a - d)/2)^2 + |b|^2)`.
pub fn eigenvalues_2x2(m: &ReducedDensity) -> Result<(f64, f64)> {
    if m.dim != 2 {
        return Err(QslError::InvalidParams(format!(
            "eigenvalues_2x2 requires a 2x2 matrix, got dim {}",
            m.dim
        )));
    }
    let defect = m.hermiticity_defect();
    let scale = m.elems.iter().fold(0.0f64, |acc, z| acc.max(math::hypot(z.re, z.im)));
    if defect > 1e-9 * scale.max(1.0) {
        return Err(QslError::InvalidParams(format!(
            "eigenvalues_2x2 requires a Hermitian matrix (defect {defect:.3e})"
        )));
    }
    let a = m.get(0, 0).re;
    let d = m.get(1, 1).re;
    let b = m.get(0, 1);
    let mean = 0.5 * (a + d);
    let disc = math::hypot(0.5 * (a - d), math::hypot(b.re, b.im));
    Ok((mean + disc, mean - disc))
}
