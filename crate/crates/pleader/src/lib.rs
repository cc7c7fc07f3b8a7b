//! Multifractal analysis through p-leaders, with finite-resolution corrections.
//!
//! The crate synthesizes multifractal reference data (deterministic and random
//! multiplicative cascades directly in the wavelet domain, plus sampled-path
//! processes: fractional Brownian motion, multifractal random walks and
//! α-stable flights), runs the p-leader estimation pipeline on them, and
//! benchmarks corrected against uncorrected estimators under Monte Carlo
//! replication.
//!
//! # Scale indexing
//!
//! Throughout the crate, octave `j = 1` is the *finest* available scale and
//! octaves grow coarser as `j` increases; an octave holds half the positions
//! (per axis) of the next finer one. Log-log slopes of structure functions
//! against `j` are therefore positive for positively regular data
//! (`|c| ~ 2^{jh}`), and the number of finer-or-equal octaves available at
//! octave `j` is simply `j`.
//!
//! # Finite-resolution correction
//!
//! p-leaders aggregate coefficients over all finer octaves. On finite data
//! that sum is truncated, which biases structure functions by the partial
//! geometric factor `γ(j, η(p)) = (1 - 2^{-j η(p)}) / (1 - 2^{-η(p)})`
//! (`γ = j` in the limit `η → 0`). The [`mfa`] module estimates `η(p)` from
//! coefficient structure functions and removes the factor from structure
//! functions and first log-cumulants; the [`cascades`] module provides
//! synthetic models whose corrected and uncorrected statistics are known in
//! closed form, used as oracles by the test suite.

pub mod cascades;
pub mod error;
pub mod harness;
pub mod mfa;
pub mod processes;
pub mod wavelet;

pub use error::{Error, Result};
