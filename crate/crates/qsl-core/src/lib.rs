//! Analytic reduced dynamics and quantum-speed-limit bounds for a dephasing
//! spin-boson model, plus self-contained numerical oracles.
//!
//! The model couples a spin-j system (frequency `omega`) to a single bosonic
//! mode (frequency `beta`) through `eta (b + b^dag) J^2`. On a fixed-j
//! subspace the coupling acts on the environment alone with strength
//! `gamma = eta j (j+1)`, so the boson propagator splits off exactly and the
//! displaced-oscillator transition amplitudes have a closed form
//! ([`amplitude`]). Everything downstream is built from those amplitudes:
//!
//! * [`env`] — the environment coherence weight `Omega(t)` under two
//!   normalization conventions ([`params::NormalizationMode`]),
//! * [`density`] — the reduced density matrix and its time derivative,
//! * [`metrics`] — Uhlmann fidelity, Bures angle, time-averaged norm rates of
//!   `d rho / dt` (operator / trace / Hilbert-Schmidt), and the resulting
//!   speed-limit time `t_LB`,
//! * [`quad`] — the adaptive Gauss-Kronrod integrator behind the averages,
//! * [`oracle`] — an independent dense-eigendecomposition propagator for the
//!   full spin⊗boson space plus a Zassenhaus product-formula propagator,
//!   used to cross-check every analytic quantity.
//!
//! The crate is `no_std`-compatible (requires `alloc`); enable the `libm`
//! feature in place of `std` for builds without the standard library.

#![cfg_attr(not(feature = "std"), no_std)]
#![deny(unsafe_code)]

#[cfg(not(any(feature = "std", feature = "libm")))]
compile_error!("qsl-core needs either the `std` or the `libm` feature for float math");

extern crate alloc;

pub mod amplitude;
pub mod aux;
pub mod density;
pub mod env;
pub mod error;
pub mod math;
pub mod metrics;
pub mod oracle;
pub mod params;
pub mod quad;

pub use amplitude::AmplitudeTable;
pub use density::{drho_dt, eigenvalues_2x2, rho_s, DerivativeScheme, ReducedDensity};
pub use env::{env_factor, env_factor_with_dot};
pub use error::{QslError, Result};
pub use metrics::{
    bures_angle, fidelity, norm_rates, speed_limit, uhlmann_fidelity_2x2, NormRates, SpeedLimit,
};
pub use params::{ModelParams, NormalizationMode};
pub use quad::QuadConfig;
