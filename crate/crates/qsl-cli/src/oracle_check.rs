//! Inline equivalence test: the analytic reduced density matrix against the
//! dense full-Hilbert-space propagator, on a coarse time grid, with Fock
//! convergence verified by doubling the cutoff. Guards the analytic
//! pipeline on every release.

use anyhow::Result;
use qsl_core::oracle::{fock_dim_default, Propagator};
use qsl_core::{rho_s, ModelParams, NormalizationMode};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::RunConfig;

/// Elementwise agreement threshold between the analytic and dense states.
pub const AGREEMENT_TOL: f64 = 1e-6;
/// Allowed shift when the dense Fock cutoff is doubled.
pub const DOUBLING_TOL: f64 = 1e-8;
/// Grid: 25 points spanning `[0, 5]`.
pub const GRID_POINTS: usize = 25;
pub const GRID_T_MAX: f64 = 5.0;

#[derive(Debug, Clone, Serialize)]
pub struct OracleEntry {
    pub eta: f64,
    pub n_max: usize,
    /// `sup_t max_elem |rho_analytic - rho_dense|` at the default cutoff.
    pub sup_diff: f64,
    /// `sup_t max_elem |rho_dense(fock) - rho_dense(2 fock)|`.
    pub sup_doubling_shift: f64,
    pub fock_dim: usize,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub entries: Vec<OracleEntry>,
    pub pass: bool,
}

fn check_key(base: &RunConfig, eta: f64, n_max: usize) -> Result<OracleEntry> {
    let params = ModelParams::new(base.omega, base.beta, eta, base.j, n_max)?;
    let mode: NormalizationMode = base.mode.into();
    let fock = fock_dim_default(&params);
    let dense = Propagator::new(&params, Some(fock))?;
    let doubled = Propagator::new(&params, Some(2 * fock))?;
    let mut sup_diff = 0.0f64;
    let mut sup_shift = 0.0f64;
    for i in 0..GRID_POINTS {
        let t = GRID_T_MAX * i as f64 / (GRID_POINTS - 1) as f64;
        let analytic = rho_s(&params, t, mode)?;
        let rho_dense = dense.reduced_at(t, mode);
        let rho_doubled = doubled.reduced_at(t, mode);
        sup_diff = sup_diff.max(analytic.max_abs_diff(&rho_dense));
        sup_shift = sup_shift.max(rho_dense.max_abs_diff(&rho_doubled));
    }
    Ok(OracleEntry {
        eta,
        n_max,
        sup_diff,
        sup_doubling_shift: sup_shift,
        fock_dim: fock,
        pass: sup_diff <= AGREEMENT_TOL && sup_shift <= DOUBLING_TOL,
    })
}

/// Run the equivalence test over the reference keys
/// `eta ∈ {0.1, 1, 5} × n_max ∈ {0, 5}` (frequencies, spin, and
/// normalization taken from `base`).
pub fn oracle_check(base: &RunConfig) -> Result<OracleReport> {
    let keys: Vec<(f64, usize)> = [0.1, 1.0, 5.0]
        .iter()
        .flat_map(|&eta| [0usize, 5].iter().map(move |&n| (eta, n)))
        .collect();
    let entries = keys
        .par_iter()
        .map(|&(eta, n_max)| check_key(base, eta, n_max))
        .collect::<Result<Vec<_>>>()?;
    let pass = entries.iter().all(|e| e.pass);
    Ok(OracleReport { entries, pass })
}
