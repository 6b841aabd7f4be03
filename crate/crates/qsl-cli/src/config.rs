//! Run configuration: the validated bridge between CLI flags and the core
//! model types, echoed verbatim into JSON output.

use clap::ValueEnum;
use qsl_core::density::DerivativeScheme;
use qsl_core::{ModelParams, NormalizationMode, QslError};
use serde::{Deserialize, Serialize};

/// Reduced-state normalization (see the core crate for semantics).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Weighted truncated reduction divided by its t = 0 value.
    InitialUnit,
    /// Full evolved-state trace normalization (unit trace for all t).
    TotalTrace,
}

impl From<Mode> for NormalizationMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::InitialUnit => NormalizationMode::InitialUnit,
            Mode::TotalTrace => NormalizationMode::TotalTrace,
        }
    }
}

/// How the density-matrix time derivative inside the rate integrals is
/// evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Derivative {
    Analytic,
    FiniteDiff,
}

/// Symmetric-difference step used by [`Derivative::FiniteDiff`].
pub const FD_STEP: f64 = 1e-5;

impl From<Derivative> for DerivativeScheme {
    fn from(d: Derivative) -> Self {
        match d {
            Derivative::Analytic => DerivativeScheme::Analytic,
            Derivative::FiniteDiff => DerivativeScheme::FiniteDiff { h: FD_STEP },
        }
    }
}

/// Output serialization format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Csv,
    Json,
}

/// Everything a single curve evaluation depends on. Serialized as the
/// `config` echo block of JSON output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub omega: f64,
    pub beta: f64,
    pub eta: f64,
    pub j: f64,
    pub n_max: usize,
    pub t_max: f64,
    pub steps: usize,
    pub mode: Mode,
    pub derivative: Derivative,
}

impl Default for RunConfig {
    /// Defaults reproduce the reference regimes: unit frequencies,
    /// spin 1/2, weak coupling, 400 steps over [0, 20].
    fn default() -> Self {
        RunConfig {
            omega: 1.0,
            beta: 1.0,
            eta: 0.1,
            j: 0.5,
            n_max: 0,
            t_max: 20.0,
            steps: 400,
            mode: Mode::InitialUnit,
            derivative: Derivative::Analytic,
        }
    }
}

impl RunConfig {
    /// Validate and build the core parameter set.
    pub fn params(&self) -> Result<ModelParams, QslError> {
        if !(self.t_max.is_finite() && self.t_max > 0.0) {
            return Err(QslError::InvalidParams(format!(
                "t_max must be finite and > 0, got {}",
                self.t_max
            )));
        }
        if self.steps < 2 {
            return Err(QslError::InvalidParams(format!(
                "steps must be >= 2, got {}",
                self.steps
            )));
        }
        ModelParams::new(self.omega, self.beta, self.eta, self.j, self.n_max)
    }

    pub fn normalization(&self) -> NormalizationMode {
        self.mode.into()
    }

    pub fn scheme(&self) -> DerivativeScheme {
        self.derivative.into()
    }
}

/// Sweep specification: the cartesian product of coupling strengths and
/// reference occupation cutoffs, sharing one time grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub eta_list: Vec<f64>,
    pub n_max_list: Vec<usize>,
    /// Grid and model parameters shared by every key (its `eta`/`n_max`
    /// are overridden per key).
    pub base: RunConfig,
}

impl SweepSpec {
    /// The three reference coupling regimes crossed with the three
    /// reference occupation cutoffs.
    pub fn defaults(base: RunConfig) -> Self {
        SweepSpec {
            eta_list: vec![0.1, 1.0, 5.0],
            n_max_list: vec![0, 5, 10],
            base,
        }
    }

    pub fn validate(&self) -> Result<(), QslError> {
        if self.eta_list.is_empty() || self.n_max_list.is_empty() {
            return Err(QslError::InvalidParams(
                "sweep lists must be non-empty".into(),
            ));
        }
        for &eta in &self.eta_list {
            for &n_max in &self.n_max_list {
                self.key_config(eta, n_max).params()?;
            }
        }
        Ok(())
    }

    pub fn key_config(&self, eta: f64, n_max: usize) -> RunConfig {
        RunConfig {
            eta,
            n_max,
            ..self.base.clone()
        }
    }
}
