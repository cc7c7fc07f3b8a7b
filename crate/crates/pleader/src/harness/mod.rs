//! Monte-Carlo benchmarking of raw versus finite-resolution-corrected
//! estimators on sources with known scaling exponents.
//!
//! An [`ExperimentSpec`] names a synthetic source, a seed and an ensemble
//! size; [`run_monte_carlo`] realizes the ensemble reproducibly, analyzes
//! every realization with and without the correction, and aggregates
//! estimator statistics against the source's closed-form constants.
//! [`emit_figure_data`] flattens a report into JSON + CSV for plotting.

mod emit;
mod run;
mod spec;

pub use emit::emit_figure_data;
pub use run::{
    run_monte_carlo, EstimatorStats, MonteCarloReport, PerExponent, RormseRow, SeRatio,
};
pub use spec::{
    mrw_truth_c1, truth_constants, ExperimentSpec, PValue, SourceSpec, TruthConstants,
};
