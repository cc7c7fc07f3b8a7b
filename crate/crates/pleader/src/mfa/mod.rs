//! Multifractal analysis: p-leaders, structure functions, cumulants, the
//! finite-resolution correction, scaling fits, and the Legendre spectrum.

mod analyze;
mod correction;
mod cumulants;
mod leaders;
mod legendre;
mod regression;
mod scaling;
mod structure;

pub use analyze::{analyze, AnalysisConfig, AnalysisReport, PAnalysis, DEFAULT_MIN_SAMPLES};
pub use correction::{correct_cumulants, correct_structure, gamma_factor};
pub use cumulants::{cumulants, CumulantTable};
pub use leaders::{compute_pleaders, compute_pleaders_from, LeaderMode, PLeaderField};
pub use legendre::{legendre_at, legendre_spectrum, LegendreSpectrum, SpectrumPoint};
pub use regression::{fit_octaves, FitLine, OctaveRange, WeightScheme};
pub use scaling::{
    default_p_grid, estimate_eta, estimate_log_cumulants, estimate_p0, estimate_zeta,
    CumulantEstimate, EtaEstimate, P0Estimate, ZetaEstimate, P0_TOLERANCE,
};
pub use structure::{sf_coefficients, sf_leaders, StructureTable, MAX_ZERO_FRACTION};
