//! Fidelity, Bures angle, derivative-norm rates, and the speed-limit time.
//!
//! For the spin-1/2 reduced state the fidelity against the initial pure
//! state `P = |+x><+x|` is `F(t) = Tr(P rho(t)) = Omega(t)(1 + cos(omega t))/2`,
//! the Bures angle is `B = arccos(F)`, and the derivative eigenvalues are
//! `(dOmega +- sqrt(omega^2 Omega^2 + dOmega^2))/2`, giving closed norm rates
//!
//! * operator:        `(|dOmega| + s)/2`,
//! * trace:           `s`,
//! * Hilbert-Schmidt: `sqrt(dOmega^2 + omega^2 Omega^2 / 2)`,
//!
//! with `s = sqrt(omega^2 Omega^2 + dOmega^2)`. The speed-limit time at `t`
//! divides `|F - 1|` by the *time-averaged* rate
//! `Delta_k(t) = (1/t) int_0^t ||d rho/ds||_k ds` and takes the largest
//! (tightest) of the three bounds; each is a rigorous lower bound on t
//! because `|Tr(P M)| <= ||M||` for every unitarily-invariant norm used here
//! and rank-1 projector P.

use alloc::format;

use crate::density::{DerivativeScheme, ReducedDensity};
use crate::env::CoherenceWeight;
use crate::error::{QslError, Result};
use crate::math;
use crate::params::{ModelParams, NormalizationMode};
use crate::quad::{integrate, QuadConfig};

/// The three derivative-norm rates at one instant, or their time averages.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormRates {
    pub op: f64,
    pub tr: f64,
    pub hs: f64,
}

impl NormRates {
    fn from_omega(omega_freq: f64, omega_val: f64, omega_dot: f64) -> Self {
        let s = math::hypot(omega_freq * omega_val, omega_dot);
        NormRates {
            op: 0.5 * (math::abs(omega_dot) + s),
            tr: s,
            hs: math::hypot(omega_dot, omega_freq * omega_val / core::f64::consts::SQRT_2),
        }
    }

    /// Norms of an arbitrary Hermitian 2x2 matrix via its eigenvalues:
    /// operator = max |lambda|, trace = sum |lambda|,
    /// Hilbert-Schmidt = sqrt(sum lambda^2).
    pub fn from_matrix(m: &ReducedDensity) -> Result<Self> {
        let (hi, lo) = crate::density::eigenvalues_2x2(m)?;
        let (ahi, alo) = (math::abs(hi), math::abs(lo));
        Ok(NormRates {
            op: ahi.max(alo),
            tr: ahi + alo,
            hs: math::hypot(hi, lo),
        })
    }
}

/// Fidelity `F(t)` between `rho(t)` and the initial pure state.
pub fn fidelity(params: &ModelParams, t: f64, mode: NormalizationMode) -> Result<f64> {
    params.require_spin_half()?;
    let weight = CoherenceWeight::new(params, mode)?;
    fidelity_from(&weight, t)
}

fn fidelity_from(weight: &CoherenceWeight, t: f64) -> Result<f64> {
    let (omega_val, _) = weight.eval(t)?;
    let p = weight.params();
    Ok(omega_val * (1.0 + math::cos(p.omega * t)) / 2.0)
}

/// Bures angle `arccos(F)` for a fidelity in `[0, 1]` (clamped for roundoff).
pub fn bures_angle(f: f64) -> f64 {
    math::acos(f.clamp(-1.0, 1.0))
}

/// Instantaneous norm rates of `d rho/dt` at `t` (spin-1/2).
pub fn norm_rates(params: &ModelParams, t: f64, mode: NormalizationMode) -> Result<NormRates> {
    params.require_spin_half()?;
    let weight = CoherenceWeight::new(params, mode)?;
    let (omega_val, omega_dot) = weight.eval(t)?;
    Ok(NormRates::from_omega(params.omega, omega_val, omega_dot))
}

/// Incremental evaluator of the time-averaged rates `Delta_k(t)` along an
/// increasing sequence of times: each step integrates only `[t_prev, t]`, so
/// a dense output grid costs one pass over `[0, t_max]` total.
#[derive(Debug, Clone)]
pub struct DeltaAccumulator {
    weight: CoherenceWeight,
    cfg: QuadConfig,
    scheme: DerivativeScheme,
    t_last: f64,
    int_op: f64,
    int_tr: f64,
    int_hs: f64,
}

impl DeltaAccumulator {
    pub fn new(params: &ModelParams, mode: NormalizationMode, cfg: QuadConfig) -> Result<Self> {
        Self::with_scheme(params, mode, cfg, DerivativeScheme::Analytic)
    }

    pub fn with_scheme(
        params: &ModelParams,
        mode: NormalizationMode,
        cfg: QuadConfig,
        scheme: DerivativeScheme,
    ) -> Result<Self> {
        params.require_spin_half()?;
        if let DerivativeScheme::FiniteDiff { h } = scheme {
            if !(h.is_finite() && h > 0.0) {
                return Err(QslError::InvalidParams(format!(
                    "finite-difference step must be finite and > 0, got {h}"
                )));
            }
        }
        let weight = CoherenceWeight::new(params, mode)?;
        let mut cfg = cfg;
        if cfg.seed_width.is_none() {
            cfg.seed_width = Some(default_seed_width(params));
        }
        Ok(Self { weight, cfg, scheme, t_last: 0.0, int_op: 0.0, int_tr: 0.0, int_hs: 0.0 })
    }

    /// Instantaneous rates at `s` under the configured derivative scheme.
    fn rates_at(&self, s: f64) -> Result<NormRates> {
        let p = self.weight.params();
        match self.scheme {
            DerivativeScheme::Analytic => {
                let (ov, od) = self.weight.eval(s)?;
                Ok(NormRates::from_omega(p.omega, ov, od))
            }
            DerivativeScheme::FiniteDiff { h } => {
                let (plus, _) = self.weight.eval(s + h)?;
                let (minus, _) = self.weight.eval(s - h)?;
                let rho_plus = crate::density::assemble(p, s + h, plus, 0.0, false);
                let rho_minus = crate::density::assemble(p, s - h, minus, 0.0, false);
                let inv = 1.0 / (2.0 * h);
                let elems = rho_plus
                    .elems()
                    .iter()
                    .zip(rho_minus.elems())
                    .map(|(a, b)| (a - b) * inv)
                    .collect();
                let diff = ReducedDensity::from_elems(p.spin_dim(), elems)?;
                NormRates::from_matrix(&diff)
            }
        }
    }

    pub fn params(&self) -> &ModelParams {
        self.weight.params()
    }

    /// Advance to time `t` and assemble the full speed-limit record there.
    pub fn speed_limit_at(&mut self, t: f64) -> Result<SpeedLimit> {
        let delta = self.advance_to(t)?;
        speed_limit_from(&self.weight, delta, t)
    }

    /// Advance to time `t >=` the previous time and return `Delta_k(t)`.
    /// At `t = 0` the average degenerates to the instantaneous rate.
    pub fn advance_to(&mut self, t: f64) -> Result<NormRates> {
        if !(t.is_finite() && t >= 0.0) {
            return Err(QslError::InvalidParams(format!(
                "time must be finite and >= 0, got {t}"
            )));
        }
        if t < self.t_last {
            return Err(QslError::InvalidParams(format!(
                "DeltaAccumulator times must be non-decreasing: {t} < {}",
                self.t_last
            )));
        }
        if t == 0.0 {
            return self.rates_at(0.0);
        }
        if t > self.t_last {
            // Error budget proportional to the increment's share of the span.
            let mut cfg = self.cfg;
            cfg.abs_tol = (self.cfg.abs_tol * (t - self.t_last) / t.max(1.0)).max(1e-13);
            for (kind, slot) in [(0usize, 0usize), (1, 1), (2, 2)] {
                let this = &*self;
                let outcome = integrate(
                    |s| {
                        let r = this.rates_at(s)?;
                        Ok(match kind {
                            0 => r.op,
                            1 => r.tr,
                            _ => r.hs,
                        })
                    },
                    self.t_last,
                    t,
                    &cfg,
                )?;
                match slot {
                    0 => self.int_op += outcome.value,
                    1 => self.int_tr += outcome.value,
                    _ => self.int_hs += outcome.value,
                }
            }
            self.t_last = t;
        }
        Ok(NormRates { op: self.int_op / t, tr: self.int_tr / t, hs: self.int_hs / t })
    }
}

/// Quarter period of the fastest frequency in the rate integrand.
fn default_seed_width(params: &ModelParams) -> f64 {
    let fastest = params.omega.max(params.beta).max(params.gamma()).max(1e-3);
    0.5 * core::f64::consts::PI / fastest
}

/// One-shot `Delta_k(t)`.
pub fn delta_time_average(
    params: &ModelParams,
    t: f64,
    mode: NormalizationMode,
    cfg: &QuadConfig,
) -> Result<NormRates> {
    DeltaAccumulator::new(params, mode, *cfg)?.advance_to(t)
}

/// Everything the speed-limit analysis produces at one time point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpeedLimit {
    pub t: f64,
    pub fidelity: f64,
    pub bures: f64,
    pub delta: NormRates,
    /// `t_LB = max_k |F - 1| / Delta_k`: the tightest of the three bounds.
    pub t_lb: f64,
    /// `t_LB / t`; 0 at `t = 0` (the limit of the ratio).
    pub ratio: f64,
}

fn speed_limit_from(weight: &CoherenceWeight, delta: NormRates, t: f64) -> Result<SpeedLimit> {
    let f = fidelity_from(weight, t)?;
    let b = bures_angle(f);
    // |cos B - 1| with B = arccos F is |F - 1|.
    let gap = math::abs(f - 1.0);
    let mut t_lb = 0.0f64;
    for d in [delta.op, delta.tr, delta.hs] {
        if d > 0.0 {
            t_lb = t_lb.max(gap / d);
        }
    }
    let ratio = if t > 0.0 { t_lb / t } else { 0.0 };
    Ok(SpeedLimit { t, fidelity: f, bures: b, delta, t_lb, ratio })
}

/// Evaluate the speed-limit bound at time `t`.
pub fn speed_limit(
    params: &ModelParams,
    t: f64,
    mode: NormalizationMode,
    cfg: &QuadConfig,
) -> Result<SpeedLimit> {
    DeltaAccumulator::new(params, mode, *cfg)?.speed_limit_at(t)
}

/// Uhlmann fidelity `(Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2` for 2x2
/// positive-semidefinite Hermitian matrices, via the closed form
/// `Tr(rho sigma) + 2 sqrt(det rho det sigma)`.
pub fn uhlmann_fidelity_2x2(rho: &ReducedDensity, sigma: &ReducedDensity) -> Result<f64> {
    for (name, m) in [("rho", rho), ("sigma", sigma)] {
        if m.dim() != 2 {
            return Err(QslError::InvalidParams(format!(
                "uhlmann_fidelity_2x2 requires 2x2 matrices, {name} has dim {}",
                m.dim()
            )));
        }
        let (hi, lo) = crate::density::eigenvalues_2x2(m)?;
        if lo < -1e-10 * hi.max(1.0) {
            return Err(QslError::InvalidParams(format!(
                "{name} must be positive semidefinite, smallest eigenvalue {lo:.3e}"
            )));
        }
    }
    let prod_trace: f64 = (0..2)
        .map(|r| {
            (0..2)
                .map(|k| (rho.get(r, k) * sigma.get(k, r)).re)
                .sum::<f64>()
        })
        .sum();
    let det_rho = rho.determinant_2x2()?.re.max(0.0);
    let det_sigma = sigma.determinant_2x2()?.re.max(0.0);
    Ok(prod_trace + 2.0 * math::sqrt(det_rho * det_sigma))
}

/// Convenience: the fixed projector `|+x><+x|` the fidelity is taken
/// against (the `t = 0` reduced state in INITIAL-UNIT normalization).
pub fn initial_projector() -> ReducedDensity {
    use num_complex::Complex64;
    let h = Complex64::new(0.5, 0.0);
    ReducedDensity::from_elems(2, alloc::vec![h, h, h, h]).expect("2x2 literal")
}
