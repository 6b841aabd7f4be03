//! Output serialization. The CSV column contract is fixed:
//!
//! ```text
//! t,F,B,delta_op,delta_tr,delta_hs,t_lb,t_lb_over_t
//! ```
//!
//! header row, decimal points, 17-significant-digit floats (lossless f64
//! round-trip), every row newline-terminated. JSON mirrors the same fields
//! per record and prepends a config echo block.

use std::io::Write;

use anyhow::{Context, Result};
use serde::Serialize;

use crate::config::RunConfig;
use crate::run::{Record, SweepOutcome};

pub const CSV_HEADER: &str = "t,F,B,delta_op,delta_tr,delta_hs,t_lb,t_lb_over_t";

/// One float, 17 significant digits, scientific notation.
fn fmt(v: f64) -> String {
    format!("{v:.16e}")
}

/// Render records as a CSV document (header + one line per record).
pub fn csv_string(records: &[Record]) -> String {
    let mut out = String::with_capacity(32 + records.len() * 160);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in records {
        for (i, v) in [r.t, r.f, r.b, r.delta_op, r.delta_tr, r.delta_hs, r.t_lb, r.t_lb_over_t]
            .into_iter()
            .enumerate()
        {
            if i > 0 {
                out.push(',');
            }
            out.push_str(&fmt(v));
        }
        out.push('\n');
    }
    out
}

pub fn write_csv<W: Write>(mut w: W, records: &[Record]) -> Result<()> {
    w.write_all(csv_string(records).as_bytes())
        .context("writing CSV output")
}

/// JSON document for a single curve: `{"config": ..., "records": [...]}`.
#[derive(Debug, Serialize)]
pub struct CurveDocument<'a> {
    pub config: &'a RunConfig,
    pub records: &'a [Record],
}

pub fn write_json_curve<W: Write>(mut w: W, config: &RunConfig, records: &[Record]) -> Result<()> {
    let doc = CurveDocument { config, records };
    serde_json::to_writer_pretty(&mut w, &doc).context("writing JSON output")?;
    w.write_all(b"\n").context("writing JSON output")?;
    Ok(())
}

/// JSON document for a sweep: config echo, per-key curves (or per-key
/// errors), and the saturation report.
#[derive(Debug, Serialize)]
pub struct SweepDocument<'a> {
    pub config: &'a crate::config::SweepSpec,
    #[serde(flatten)]
    pub outcome: &'a SweepOutcome,
}

pub fn write_json_sweep<W: Write>(
    mut w: W,
    spec: &crate::config::SweepSpec,
    outcome: &SweepOutcome,
) -> Result<()> {
    let doc = SweepDocument { config: spec, outcome };
    serde_json::to_writer_pretty(&mut w, &doc).context("writing JSON output")?;
    w.write_all(b"\n").context("writing JSON output")?;
    Ok(())
}

/// File name for one sweep key's CSV curve.
pub fn sweep_file_name(eta: f64, n_max: usize) -> String {
    // eta rendered with '.' replaced so names stay shell-friendly.
    let eta_tag = format!("{eta}").replace('.', "p");
    format!("eta{eta_tag}_nmax{n_max}.csv")
}
