//! Library surface of the `qsl` command-line tool.
//!
//! The binary is a thin wrapper over these modules so integration tests can
//! drive the exact production code paths:
//!
//! * [`config`] — run configuration, validation, and the JSON echo types;
//! * [`run`] — single-curve evaluation and the three-regime sweep;
//! * [`emit`] — CSV/JSON serialization with a fixed column contract;
//! * [`oracle_check`] — inline equivalence test of the analytic pipeline
//!   against the dense eigendecomposition propagator.

pub mod config;
pub mod emit;
pub mod oracle_check;
pub mod run;
