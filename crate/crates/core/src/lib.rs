//! Discrete-time quantum walks with one or two walkers, coin dephasing, and
//! magic diagnostics (stabilizer Rényi entropy) on the reduced coin state.
//!
//! The crate is organised bottom-up:
//!
//! * [`qstate`]: pure states, density matrices, index layout, partial trace.
//! * [`walk`]: coin and shift operators, single/two-walker step maps.
//! * [`channel`]: density-matrix evolution under coin dephasing.
//! * [`magic`]: Pauli spectra, stabilizer Rényi entropy, von Neumann entropy.
//! * [`response`]: coin-basis propagators used to sweep initial states cheaply.
//! * [`asymptotic`]: closed-form long-time coin state of the Hadamard walk.
//! * [`experiments`]: initial-state library, sweeps, mixtures and figure presets.
//! * [`table`]: deterministic CSV rendering.

pub mod asymptotic;
pub mod channel;
pub mod error;
pub mod experiments;
pub mod magic;
pub mod qstate;
pub mod response;
pub mod table;
pub mod walk;

pub use error::{Result, WalkError};
pub use num_complex::Complex64;

/// Library version stamped into every CSV header and manifest.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
