//! Sampled stochastic processes with known scaling behavior: fractional
//! Brownian motion, the multifractal random walk, and symmetric α-stable
//! motion, plus Fourier-domain fractional integration for shifting a
//! process's regularity.

mod fracint;
mod gaussian;
mod levy;

pub use fracint::fractional_integrate;
pub use gaussian::{fgn_autocov, gaussian_from_autocov, synth_fbm, synth_fgn, synth_mrw};
pub use levy::synth_levy;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;

/// Declarative description of a 1D process realization, suitable for config
/// files and benchmark manifests. `integrate` applies an optional fractional
/// integration of the given order after synthesis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ProcessSpec {
    Fbm {
        n: usize,
        hurst: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        integrate: Option<f64>,
    },
    Mrw {
        n: usize,
        hurst: f64,
        lambda: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        integrate: Option<f64>,
    },
    Levy {
        n: usize,
        alpha: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        integrate: Option<f64>,
    },
}

impl ProcessSpec {
    pub fn len(&self) -> usize {
        match self {
            Self::Fbm { n, .. } | Self::Mrw { n, .. } | Self::Levy { n, .. } => *n,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn integrate_order(&self) -> Option<f64> {
        match self {
            Self::Fbm { integrate, .. }
            | Self::Mrw { integrate, .. }
            | Self::Levy { integrate, .. } => *integrate,
        }
    }

    /// Draws one realization, applying the optional fractional integration.
    pub fn synthesize<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Vec<f64>> {
        let path = match self {
            Self::Fbm { n, hurst, .. } => synth_fbm(*n, *hurst, rng)?,
            Self::Mrw {
                n, hurst, lambda, ..
            } => synth_mrw(*n, *hurst, *lambda, rng)?,
            Self::Levy { n, alpha, .. } => synth_levy(*n, *alpha, rng)?,
        };
        match self.integrate_order() {
            Some(s) => fractional_integrate(&path, s),
            None => Ok(path),
        }
    }
}
