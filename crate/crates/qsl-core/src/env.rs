//! Environment coherence weight `Omega(t)`.
//!
//! The reference environment state is the unnormalized superposition
//! `|e> = sum_{n' <= n_max} (1/sqrt(n'!)) |n'>`. With
//! `F_n(t) = <n| U_env(t) |e> = sum_{n' <= n_max} E_{n,n'}(t) / sqrt(n'!)`,
//! the weighted coherence sum is
//!
//! `W(t) = sum_{n <= n_max} (1/n!) |F_n(t)|^2`,
//!
//! and the coherence weight is `W(t)` divided by a normalization `N`:
//!
//! * INITIAL-UNIT: `N = W(0) = sum_{n <= n_max} 1/(n!)^2`, so
//!   `Omega(0) = 1` exactly and the reduced trace follows `Omega(t)`.
//! * TOTAL-TRACE: `N(t) = sum_{n >= 0} |F_n(t)|^2`, the full norm of the
//!   evolved environment state. Unitarity makes `N(t)` constant
//!   (`= sum_{n' <= n_max} 1/n'!`), so this convention returns
//!   `Omega(t) = N(t)/N(0) = 1` up to roundoff: the literal total-trace
//!   reading produces a non-decaying reduced state.
//!
//! Derivatives come from the exact ladder identity
//! `dF_n/dt = -i [beta n F_n + gamma (sqrt(n) F_{n-1} + sqrt(n+1) F_{n+1})]`.

use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::amplitude::AmplitudeTable;
use crate::aux::aux_at;
use crate::error::{QslError, Result};
use crate::math;
use crate::params::{ModelParams, NormalizationMode};

/// Hard ceiling on the total-trace tail; the occupation distribution decays
/// super-exponentially past `|A|^2 + n_max`, so hitting this is a bug or a
/// wildly out-of-range coupling.
const TT_CUTOFF: usize = 2048;
/// Consecutive negligible terms required to declare the tail converged.
const TT_RUN: usize = 8;

/// `F_n(t)` for `n = 0..=rows-1`, sharing one displacement evaluation.
fn env_columns(params: &ModelParams, t: f64, rows: usize) -> Vec<Complex64> {
    let table = AmplitudeTable::for_params(params);
    let aux = aux_at(params.beta, params.gamma(), t);
    let mut inv_sqrt_fact = Vec::with_capacity(params.n_max + 1);
    for np in 0..=params.n_max {
        inv_sqrt_fact.push(math::exp(-0.5 * math::ln_factorial(np)));
    }
    (0..rows)
        .map(|n| {
            let mut f = Complex64::new(0.0, 0.0);
            for (np, w) in inv_sqrt_fact.iter().enumerate() {
                f += table.amplitude_at(n, np, t, &aux) * *w;
            }
            f
        })
        .collect()
}

/// `dF_n/dt` for `n = 0..rows-1` given `F_0..F_rows` (one extra row).
fn column_dots(params: &ModelParams, cols: &[Complex64], rows: usize) -> Vec<Complex64> {
    let gamma = params.gamma();
    (0..rows)
        .map(|n| {
            let nf = n as f64;
            let lower = if n == 0 { Complex64::new(0.0, 0.0) } else { cols[n - 1] };
            let sum = params.beta * nf * cols[n]
                + gamma * (math::sqrt(nf) * lower + math::sqrt(nf + 1.0) * cols[n + 1]);
            Complex64::new(0.0, -1.0) * sum
        })
        .collect()
}

/// Weighted truncated coherence sum `W(t)` and its time derivative.
pub fn weighted_sum_with_dot(params: &ModelParams, t: f64) -> (f64, f64) {
    let rows = params.n_max + 2;
    let cols = env_columns(params, t, rows);
    let dots = column_dots(params, &cols, params.n_max + 1);
    let mut w = 0.0;
    let mut w_dot = 0.0;
    for n in 0..=params.n_max {
        let weight = math::exp(-math::ln_factorial(n));
        w += weight * cols[n].norm_sqr();
        w_dot += weight * 2.0 * (cols[n].conj() * dots[n]).re;
    }
    (w, w_dot)
}

/// INITIAL-UNIT normalization constant `sum_{n <= n_max} 1/(n!)^2` in closed
/// form (equals `W(0)`).
pub fn norm_initial_unit(n_max: usize) -> f64 {
    let mut acc = 0.0;
    for n in 0..=n_max {
        let lf = math::ln_factorial(n);
        acc += math::exp(-2.0 * lf);
    }
    acc
}

/// Full evolved-state norm `N(t) = sum_{n >= 0} |F_n(t)|^2` with its
/// derivative, tail-summed until `TT_RUN` consecutive terms fall below
/// `tol_rel * running total`.
pub fn norm_total_trace_with_dot(params: &ModelParams, t: f64) -> Result<(f64, f64)> {
    let table = AmplitudeTable::for_params(params);
    let aux = aux_at(params.beta, params.gamma(), t);
    let mut inv_sqrt_fact = Vec::with_capacity(params.n_max + 1);
    for np in 0..=params.n_max {
        inv_sqrt_fact.push(math::exp(-0.5 * math::ln_factorial(np)));
    }
    let col = |n: usize| -> Complex64 {
        let mut f = Complex64::new(0.0, 0.0);
        for (np, w) in inv_sqrt_fact.iter().enumerate() {
            f += table.amplitude_at(n, np, t, &aux) * *w;
        }
        f
    };
    let tol_rel = 1e-18;
    let mut total = 0.0;
    let mut total_dot = 0.0;
    let mut run = 0usize;
    // Keep a 3-row window so each row's derivative can use the ladder
    // identity once its upper neighbor exists.
    let mut prev = Complex64::new(0.0, 0.0);
    let mut cur = col(0);
    let mut n = 0usize;
    loop {
        let next = col(n + 1);
        let nf = n as f64;
        let dot = Complex64::new(0.0, -1.0)
            * (params.beta * nf * cur
                + params.gamma() * (math::sqrt(nf) * prev + math::sqrt(nf + 1.0) * next));
        let term = cur.norm_sqr();
        total += term;
        total_dot += 2.0 * (cur.conj() * dot).re;
        if n > params.n_max && term < tol_rel * total {
            run += 1;
            if run >= TT_RUN {
                return Ok((total, total_dot));
            }
        } else {
            run = 0;
        }
        n += 1;
        if n >= TT_CUTOFF {
            return Err(QslError::NonConvergence(format!(
                "total-trace norm tail still {term:.3e} after {TT_CUTOFF} Fock states"
            )));
        }
        prev = cur;
        cur = next;
    }
}

/// Full evolved-state norm `N(t)` (see [`norm_total_trace_with_dot`]).
pub fn norm_total_trace(params: &ModelParams, t: f64) -> Result<f64> {
    norm_total_trace_with_dot(params, t).map(|(n, _)| n)
}

/// Reusable `Omega(t)` evaluator: computes the `t = 0` normalization once at
/// construction (through the same code path as the numerator, so
/// `Omega(0) = 1` holds bit-for-bit) and amortizes it across calls —
/// time-average integrands evaluate `Omega` thousands of times.
#[derive(Debug, Clone)]
pub struct CoherenceWeight {
    params: ModelParams,
    mode: NormalizationMode,
    norm0: f64,
}

impl CoherenceWeight {
    pub fn new(params: &ModelParams, mode: NormalizationMode) -> Result<Self> {
        params.validate()?;
        let norm0 = match mode {
            NormalizationMode::InitialUnit => weighted_sum_with_dot(params, 0.0).0,
            NormalizationMode::TotalTrace => norm_total_trace_with_dot(params, 0.0)?.0,
        };
        Ok(Self { params: *params, mode, norm0 })
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn mode(&self) -> NormalizationMode {
        self.mode
    }

    /// `(Omega, dOmega/dt)` at `t`.
    pub fn eval(&self, t: f64) -> Result<(f64, f64)> {
        match self.mode {
            NormalizationMode::InitialUnit => {
                let (w, w_dot) = weighted_sum_with_dot(&self.params, t);
                Ok((w / self.norm0, w_dot / self.norm0))
            }
            NormalizationMode::TotalTrace => {
                let (nt, nt_dot) = norm_total_trace_with_dot(&self.params, t)?;
                Ok((nt / self.norm0, nt_dot / self.norm0))
            }
        }
    }
}

/// Coherence weight `Omega(t)` under the requested normalization.
pub fn env_factor(params: &ModelParams, t: f64, mode: NormalizationMode) -> Result<f64> {
    env_factor_with_dot(params, t, mode).map(|(omega, _)| omega)
}

/// `(Omega, dOmega/dt)` under the requested normalization. One-shot wrapper
/// around [`CoherenceWeight`].
pub fn env_factor_with_dot(
    params: &ModelParams,
    t: f64,
    mode: NormalizationMode,
) -> Result<(f64, f64)> {
    CoherenceWeight::new(params, mode)?.eval(t)
}
