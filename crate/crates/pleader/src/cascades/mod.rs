//! Synthetic multiplicative cascades built directly in the wavelet domain,
//! plus exact oracles for their p-leader statistics.
//!
//! These constructions skip the analysis transform entirely: they populate a
//! [`WaveletPyramid`] whose coefficients follow multiplicative recursions
//! with known scaling exponents, which makes them the reference targets for
//! validating estimators to near machine precision.

mod dbwc;
mod law;
mod random;

pub use dbwc::{
    dbwc_eta, oracle_dbwc_coeff_sf, oracle_dbwc_sf, synth_dbwc_1d, synth_dbwc_2d, MAX_DEPTH_1D,
    MAX_DEPTH_2D,
};
pub use law::MultiplierLaw;
pub use random::{
    lca_pair_count, mrws_ratio_denominator, oracle_mrws_bounds, oracle_mrws_moment2,
    oracle_rwc_sf, rwc_pair_factor, synth_mrws, synth_rwc, RwcOrder,
};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::wavelet::WaveletPyramid;

/// Declarative description of a cascade, suitable for config files and
/// benchmark manifests.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CascadeSpec {
    /// 1D deterministic binomial cascade with two fixed child weights.
    Dbwc1d { depth: usize, weights: [f64; 2] },
    /// 2D deterministic binomial cascade: four quadtree weights and three
    /// per-subband anisotropy factors.
    Dbwc2d {
        depth: usize,
        weights: [f64; 4],
        anisotropy: [f64; 3],
    },
    /// Independent multiplicative series driven by a multiplier law.
    Mrws { depth: usize, law: MultiplierLaw },
    /// Tree-correlated random cascade driven by a multiplier law.
    Rwc { depth: usize, law: MultiplierLaw },
}

impl CascadeSpec {
    pub fn depth(&self) -> usize {
        match self {
            Self::Dbwc1d { depth, .. }
            | Self::Dbwc2d { depth, .. }
            | Self::Mrws { depth, .. }
            | Self::Rwc { depth, .. } => *depth,
        }
    }

    pub fn dimension(&self) -> u8 {
        match self {
            Self::Dbwc2d { .. } => 2,
            _ => 1,
        }
    }

    /// Builds one realization. The deterministic variants ignore the
    /// generator and always produce the identical pyramid.
    pub fn synthesize<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<WaveletPyramid> {
        match self {
            Self::Dbwc1d { depth, weights } => synth_dbwc_1d(*depth, weights),
            Self::Dbwc2d {
                depth,
                weights,
                anisotropy,
            } => synth_dbwc_2d(*depth, weights, anisotropy),
            Self::Mrws { depth, law } => synth_mrws(*depth, law, rng),
            Self::Rwc { depth, law } => synth_rwc(*depth, law, rng),
        }
    }
}
