//! Curve evaluation: one speed-limit record per grid point, and the
//! three-regime sweep with its saturation report.

use anyhow::{Context, Result};
use qsl_core::metrics::DeltaAccumulator;
use qsl_core::quad::QuadConfig;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{RunConfig, SweepSpec};

/// One output row of the speed-limit analysis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub t: f64,
    #[serde(rename = "F")]
    pub f: f64,
    #[serde(rename = "B")]
    pub b: f64,
    pub delta_op: f64,
    pub delta_tr: f64,
    pub delta_hs: f64,
    pub t_lb: f64,
    pub t_lb_over_t: f64,
}

/// Evaluate one curve: records at `t_i = i * t_max / steps` for
/// `i = 0..=steps` (the `t = 0` row carries the defined limits `F = 1`,
/// `B = 0`, `t_lb = 0`). Deterministic given the configuration.
pub fn run_curve(cfg: &RunConfig) -> Result<Vec<Record>> {
    let params = cfg.params()?;
    let mut acc = DeltaAccumulator::with_scheme(
        &params,
        cfg.normalization(),
        QuadConfig::default(),
        cfg.scheme(),
    )?;
    let mut records = Vec::with_capacity(cfg.steps + 1);
    for i in 0..=cfg.steps {
        let t = i as f64 * cfg.t_max / cfg.steps as f64;
        let sl = acc
            .speed_limit_at(t)
            .with_context(|| format!("curve evaluation failed at t = {t}"))?;
        records.push(Record {
            t,
            f: sl.fidelity,
            b: sl.bures,
            delta_op: sl.delta.op,
            delta_tr: sl.delta.tr,
            delta_hs: sl.delta.hs,
            t_lb: sl.t_lb,
            t_lb_over_t: sl.ratio,
        });
    }
    Ok(records)
}

/// One sweep key: either a full curve or the error that stopped it
/// (partial results are still useful output).
#[derive(Debug, Clone, Serialize)]
pub struct SweepEntry {
    pub eta: f64,
    pub n_max: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub records: Option<Vec<Record>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Per-coupling comparison of the two largest occupation cutoffs:
/// the bound saturates in `n_max` when the curves coincide.
#[derive(Debug, Clone, Serialize)]
pub struct SaturationReport {
    pub eta: f64,
    pub n_max_lo: usize,
    pub n_max_hi: usize,
    /// `sup_t |t_lb(hi) - t_lb(lo)|` over the grid.
    pub sup_diff: f64,
    /// Largest `t_lb` over both curves.
    pub peak: f64,
    /// `sup_diff / peak`.
    pub rel: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepOutcome {
    pub entries: Vec<SweepEntry>,
    pub saturation: Vec<SaturationReport>,
}

impl SweepOutcome {
    pub fn any_failed(&self) -> bool {
        self.entries.iter().any(|e| e.error.is_some())
    }
}

/// Run every (eta, n_max) key of the sweep concurrently; assemble results
/// in key order so output is deterministic regardless of scheduling.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepOutcome> {
    spec.validate()?;
    let keys: Vec<(f64, usize)> = spec
        .eta_list
        .iter()
        .flat_map(|&eta| spec.n_max_list.iter().map(move |&n| (eta, n)))
        .collect();
    let entries: Vec<SweepEntry> = keys
        .par_iter()
        .map(|&(eta, n_max)| {
            let cfg = spec.key_config(eta, n_max);
            match run_curve(&cfg) {
                Ok(records) => SweepEntry { eta, n_max, records: Some(records), error: None },
                Err(e) => SweepEntry { eta, n_max, records: None, error: Some(format!("{e:#}")) },
            }
        })
        .collect();
    let saturation = saturation_reports(spec, &entries);
    Ok(SweepOutcome { entries, saturation })
}

/// Compare the two largest cutoffs per coupling strength (needs at least
/// two distinct `n_max` values and both curves intact).
fn saturation_reports(spec: &SweepSpec, entries: &[SweepEntry]) -> Vec<SaturationReport> {
    let mut sorted = spec.n_max_list.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() < 2 {
        return Vec::new();
    }
    let lo = sorted[sorted.len() - 2];
    let hi = sorted[sorted.len() - 1];
    let mut reports = Vec::new();
    for &eta in &spec.eta_list {
        let find = |n: usize| {
            entries
                .iter()
                .find(|e| e.eta == eta && e.n_max == n)
                .and_then(|e| e.records.as_ref())
        };
        if let (Some(a), Some(b)) = (find(lo), find(hi)) {
            let mut sup_diff = 0.0f64;
            let mut peak = 0.0f64;
            for (ra, rb) in a.iter().zip(b.iter()) {
                sup_diff = sup_diff.max((ra.t_lb - rb.t_lb).abs());
                peak = peak.max(ra.t_lb.max(rb.t_lb));
            }
            let rel = if peak > 0.0 { sup_diff / peak } else { 0.0 };
            reports.push(SaturationReport { eta, n_max_lo: lo, n_max_hi: hi, sup_diff, peak, rel });
        }
    }
    reports
}
