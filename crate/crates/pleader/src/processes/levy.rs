//! Symmetric α-stable motion via the Chambers–Mallows–Stuck sampler.

use rand::Rng;
use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};

/// Draws one symmetric α-stable variate with unit scale:
/// `X = sin(αU) / cos(U)^{1/α} · (cos((1−α)U) / E)^{(1−α)/α}` with
/// `U ~ Uniform(−π/2, π/2)` and `E ~ Exp(1)`. The formula degenerates to
/// `tan U` (Cauchy) at `α = 1` and to `2 sin(U) √E` (a N(0, 2) draw) at
/// `α = 2` without special-casing.
fn sample_sas<R: Rng + ?Sized>(alpha: f64, rng: &mut R) -> f64 {
    // Open01 keeps the angle strictly inside (−π/2, π/2) and Exp1 never
    // returns zero, so both divisions stay finite.
    let u = FRAC_PI_2 * (2.0 * rng.sample::<f64, _>(rand::distributions::Open01) - 1.0);
    let e: f64 = rng.sample(rand_distr::Exp1);
    let inv = (1.0 - alpha) / alpha;
    ((alpha * u).sin() / u.cos().powf(1.0 / alpha)) * (((1.0 - alpha) * u).cos() / e).powf(inv)
}

/// Draws one path of symmetric α-stable motion: `n` samples of the running
/// sum of iid unit-scale stable increments. `alpha` must lie in `(0, 2]`;
/// `alpha = 2` yields Brownian motion with variance-2 increments.
pub fn synth_levy<R: Rng + ?Sized>(n: usize, alpha: f64, rng: &mut R) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(Error::invalid(format!(
            "stable synthesis needs at least 2 samples, got {n}"
        )));
    }
    if !(alpha > 0.0 && alpha <= 2.0) {
        return Err(Error::invalid(format!(
            "stability index must lie in (0, 2], got {alpha}"
        )));
    }
    let mut acc = 0.0;
    Ok((0..n)
        .map(|_| {
            acc += sample_sas(alpha, rng);
            acc
        })
        .collect())
}
