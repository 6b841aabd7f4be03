//! `qsl` — speed-limit curves for a dephasing spin–boson model.
//!
//! Exit codes: 0 success, 1 invalid configuration (including unusable
//! output paths), 2 numerical failure, 3 oracle mismatch.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process;

use anyhow::{anyhow, Context, Result};
use clap::error::ErrorKind;
use clap::Parser;
use qsl_cli::config::{Derivative, Format, Mode, RunConfig, SweepSpec};
use qsl_cli::emit::{sweep_file_name, write_csv, write_json_curve, write_json_sweep};
use qsl_cli::oracle_check::oracle_check;
use qsl_cli::run::{run_curve, run_sweep};
use qsl_core::QslError;

/// Quantum-speed-limit curves for a dephasing spin–boson model: fidelity,
/// Bures angle, time-averaged derivative norms, and the lower bound t_lb.
#[derive(Parser, Debug)]
#[command(name = "qsl", version, about)]
struct Cli {
    /// Spin splitting frequency (> 0).
    #[arg(long, default_value_t = 1.0)]
    omega: f64,

    /// Boson mode frequency (> 0).
    #[arg(long, default_value_t = 1.0)]
    beta: f64,

    /// Bare coupling strength (>= 0); the effective coupling is
    /// eta * j * (j + 1).
    #[arg(long, default_value_t = 0.1)]
    eta: f64,

    /// Spin quantum number, a positive half-integer (the metric pipeline
    /// requires 1/2).
    #[arg(long, default_value_t = 0.5)]
    j: f64,

    /// Occupation cutoff of the truncated reference state.
    #[arg(long = "nmax", default_value_t = 0)]
    n_max: usize,

    /// End of the time grid.
    #[arg(long = "t-max", default_value_t = 20.0)]
    t_max: f64,

    /// Number of grid steps; the output has steps + 1 rows including t = 0.
    #[arg(long, default_value_t = 400)]
    steps: usize,

    /// Reduced-state normalization.
    #[arg(long, value_enum, default_value_t = Mode::InitialUnit)]
    mode: Mode,

    /// Derivative evaluation inside the rate integrals.
    #[arg(long, value_enum, default_value_t = Derivative::Analytic)]
    derivative: Derivative,

    /// Run the full reference sweep: eta in {0.1, 1, 5} x n_max in
    /// {0, 5, 10} on the shared time grid.
    #[arg(long)]
    sweep: bool,

    /// Validate the analytic pipeline against the dense full-space
    /// propagator (25-point grid, Fock doubling) and exit; failure sets
    /// exit code 3.
    #[arg(long = "oracle-check")]
    oracle_check: bool,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Output path: a file for single curves and JSON sweeps, a directory
    /// for CSV sweeps. Defaults to stdout (CSV sweeps require --out).
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Cli {
    fn run_config(&self) -> RunConfig {
        RunConfig {
            omega: self.omega,
            beta: self.beta,
            eta: self.eta,
            j: self.j,
            n_max: self.n_max,
            t_max: self.t_max,
            steps: self.steps,
            mode: self.mode,
            derivative: self.derivative,
        }
    }
}

fn writer(out: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    match out {
        Some(path) => {
            let file = File::create(path)
                .with_context(|| format!("cannot create output file {}", path.display()))?;
            Ok(Box::new(BufWriter::new(file)))
        }
        None => Ok(Box::new(io::stdout().lock())),
    }
}

fn dispatch(cli: &Cli) -> Result<i32> {
    let cfg = cli.run_config();

    if cli.oracle_check {
        cfg.params()?;
        let report = oracle_check(&cfg)?;
        for e in &report.entries {
            println!(
                "oracle eta={:<4} n_max={:<2}: sup|rho_analytic - rho_dense| = {:.3e}, \
                 doubling shift = {:.3e}, fock_dim = {} ... {}",
                e.eta,
                e.n_max,
                e.sup_diff,
                e.sup_doubling_shift,
                e.fock_dim,
                if e.pass { "ok" } else { "MISMATCH" }
            );
        }
        return if report.pass {
            println!("oracle check: PASS");
            Ok(0)
        } else {
            println!("oracle check: FAIL");
            Ok(3)
        };
    }

    if cli.sweep {
        let spec = SweepSpec::defaults(cfg);
        let outcome = run_sweep(&spec)?;
        match cli.format {
            Format::Csv => {
                let dir = cli.out.as_ref().ok_or_else(|| {
                    anyhow!(QslError::InvalidParams(
                        "--sweep with CSV output requires --out <directory>".into()
                    ))
                })?;
                std::fs::create_dir_all(dir)
                    .with_context(|| format!("cannot create directory {}", dir.display()))?;
                for entry in &outcome.entries {
                    if let Some(records) = &entry.records {
                        let path = dir.join(sweep_file_name(entry.eta, entry.n_max));
                        let file = File::create(&path).with_context(|| {
                            format!("cannot create output file {}", path.display())
                        })?;
                        write_csv(BufWriter::new(file), records)?;
                    }
                }
                for s in &outcome.saturation {
                    println!(
                        "saturation eta={:<4}: sup|t_lb(n_max={}) - t_lb(n_max={})| = {:.6e} \
                         (peak t_lb {:.6e}, rel {:.3}%)",
                        s.eta,
                        s.n_max_hi,
                        s.n_max_lo,
                        s.sup_diff,
                        s.peak,
                        100.0 * s.rel
                    );
                }
            }
            Format::Json => {
                write_json_sweep(writer(&cli.out)?, &spec, &outcome)?;
            }
        }
        for entry in &outcome.entries {
            if let Some(err) = &entry.error {
                eprintln!("sweep key eta={} n_max={} failed: {err}", entry.eta, entry.n_max);
            }
        }
        return Ok(if outcome.any_failed() { 2 } else { 0 });
    }

    let records = run_curve(&cfg)?;
    match cli.format {
        Format::Csv => write_csv(writer(&cli.out)?, &records)?,
        Format::Json => write_json_curve(writer(&cli.out)?, &cfg, &records)?,
    }
    Ok(0)
}

/// Exit-code classification: invalid parameters and unusable paths are
/// configuration errors (1); everything else that can fail is numerics (2).
fn classify(err: &anyhow::Error) -> i32 {
    for cause in err.chain() {
        if let Some(q) = cause.downcast_ref::<QslError>() {
            return match q {
                QslError::InvalidParams(_) => 1,
                _ => 2,
            };
        }
        if cause.downcast_ref::<io::Error>().is_some() {
            return 1;
        }
        // serde_json wraps write-side io::Errors without exposing them
        // through source(); io_error_kind() is the supported accessor.
        if let Some(e) = cause.downcast_ref::<serde_json::Error>() {
            if e.io_error_kind().is_some() {
                return 1;
            }
        }
    }
    2
}

/// A closed stdout (e.g. piping into `head`) is a normal way for the reader
/// to stop consuming, not an error worth reporting.
fn is_broken_pipe(err: &anyhow::Error) -> bool {
    err.chain().any(|cause| {
        let kind = cause
            .downcast_ref::<io::Error>()
            .map(io::Error::kind)
            .or_else(|| cause.downcast_ref::<serde_json::Error>().and_then(|e| e.io_error_kind()));
        kind == Some(io::ErrorKind::BrokenPipe)
    })
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            process::exit(code);
        }
    };
    match dispatch(&cli) {
        Ok(code) => process::exit(code),
        Err(err) if is_broken_pipe(&err) => process::exit(0),
        Err(err) => {
            eprintln!("error: {err:#}");
            process::exit(classify(&err));
        }
    }
}
