//! Deterministic binomial wavelet cascades and their exact oracles.
//!
//! Every tree node at level `l` (root at level 0, excluded from the pyramid)
//! carries the product of the fixed child weights along its path; in 2D the
//! three detail subbands are the node value scaled by an anisotropy vector
//! `α`. Because nothing is random, restricted p-leader structure functions
//! admit an exact closed form: with `η(q) = d − log2 Σ_m w_m^q` and the tree
//! level `l = depth + 1 − j` of practical octave `j`,
//!
//! `S̆(q, j) = ‖α‖_p^q · 2^{−l η(q)} · γ(j, η(p))^{q/p}`,
//!
//! where the truncated-sum factor `γ` is the same one removed by the
//! finite-resolution correction — so corrected tables are exact power laws.

use ndarray::Array2;

use crate::error::{Error, Result};
use crate::mfa::gamma_factor;
use crate::wavelet::{ArrayData, Boundary, OctaveDetail, WaveletPyramid};

/// Largest supported 1D depth (memory guard).
pub const MAX_DEPTH_1D: usize = 22;
/// Largest supported 2D depth (memory guard).
pub const MAX_DEPTH_2D: usize = 10;

/// Scaling exponent `η(q) = d − log2 Σ_m w_m^q` of a cascade with `2^d` child
/// weights.
pub fn dbwc_eta(weights: &[f64], q: f64) -> f64 {
    let d = usize::BITS - 1 - weights.len().leading_zeros();
    let sum: f64 = weights.iter().map(|w| w.powf(q)).sum();
    d as f64 - sum.log2()
}

fn check_weights(weights: &[f64], expected: usize) -> Result<()> {
    if weights.len() != expected {
        return Err(Error::invalid(format!(
            "expected {expected} cascade weights, got {}",
            weights.len()
        )));
    }
    if let Some(&w) = weights.iter().find(|&&w| !(w > 0.0) || !w.is_finite()) {
        return Err(Error::invalid(format!("cascade weights must be positive; got {w}")));
    }
    Ok(())
}

fn check_depth(depth: usize, max: usize) -> Result<()> {
    if depth == 0 || depth > max {
        return Err(Error::invalid(format!(
            "cascade depth must lie in 1..={max}, got {depth}"
        )));
    }
    Ok(())
}

/// Synthesizes a 1D deterministic binomial cascade of `depth` octaves.
pub fn synth_dbwc_1d(depth: usize, weights: &[f64; 2]) -> Result<WaveletPyramid> {
    check_depth(depth, MAX_DEPTH_1D)?;
    check_weights(weights, 2)?;
    let mut levels: Vec<Vec<f64>> = Vec::with_capacity(depth);
    let mut prev = vec![1.0_f64];
    for _ in 1..=depth {
        let mut cur = Vec::with_capacity(prev.len() * 2);
        for &v in &prev {
            cur.push(v * weights[0]);
            cur.push(v * weights[1]);
        }
        levels.push(cur.clone());
        prev = cur;
    }
    // Practical octave j holds tree level depth + 1 − j: finest first.
    let octaves = (1..=depth)
        .map(|j| OctaveDetail {
            subbands: vec![ArrayData::One(levels[depth - j].clone())],
        })
        .collect();
    Ok(WaveletPyramid {
        dimension: 1,
        vanishing_moments: 0,
        boundary: Boundary::Periodic,
        discard_border: 0,
        octaves,
        approx: None,
    })
}

/// Synthesizes a 2D deterministic binomial cascade on a quadtree; each
/// octave's three subbands are the node values scaled by `anisotropy`.
pub fn synth_dbwc_2d(
    depth: usize,
    weights: &[f64; 4],
    anisotropy: &[f64; 3],
) -> Result<WaveletPyramid> {
    check_depth(depth, MAX_DEPTH_2D)?;
    check_weights(weights, 4)?;
    if let Some(&a) = anisotropy.iter().find(|&&a| !(a > 0.0) || !a.is_finite()) {
        return Err(Error::invalid(format!(
            "anisotropy factors must be positive; got {a}"
        )));
    }
    let mut levels: Vec<Array2<f64>> = Vec::with_capacity(depth);
    let mut prev = Array2::from_elem((1, 1), 1.0_f64);
    for l in 1..=depth {
        let n = 1usize << l;
        let mut cur = Array2::zeros((n, n));
        for ((r, c), v) in prev.indexed_iter() {
            for a in 0..2 {
                for b in 0..2 {
                    cur[[2 * r + a, 2 * c + b]] = v * weights[2 * a + b];
                }
            }
        }
        levels.push(cur.clone());
        prev = cur;
    }
    let octaves = (1..=depth)
        .map(|j| {
            let base = &levels[depth - j];
            OctaveDetail {
                subbands: anisotropy
                    .iter()
                    .map(|&alpha| ArrayData::Two(base.mapv(|v| alpha * v)))
                    .collect(),
            }
        })
        .collect();
    Ok(WaveletPyramid {
        dimension: 2,
        vanishing_moments: 0,
        boundary: Boundary::Periodic,
        discard_border: 0,
        octaves,
        approx: None,
    })
}

/// Exact restricted p-leader structure function of a DBWC at practical
/// octave `j` (`1..=depth`); `alpha` is `[1.0]` for 1D cascades.
pub fn oracle_dbwc_sf(
    weights: &[f64],
    alpha: &[f64],
    p: f64,
    q: f64,
    j: usize,
    depth: usize,
) -> Result<f64> {
    if !(p > 0.0) || !p.is_finite() {
        return Err(Error::invalid(format!("oracle requires finite positive p, got {p}")));
    }
    if j == 0 || j > depth {
        return Err(Error::invalid(format!("octave {j} outside 1..={depth}")));
    }
    let l = (depth + 1 - j) as f64;
    let alpha_p = alpha.iter().map(|a| a.abs().powf(p)).sum::<f64>().powf(1.0 / p);
    let gamma = gamma_factor(j, dbwc_eta(weights, p));
    Ok(alpha_p.powf(q) * 2.0_f64.powf(-l * dbwc_eta(weights, q)) * gamma.powf(q / p))
}

/// Exact coefficient structure function of a DBWC: the per-position subband
/// sum convention gives `S_c(q, j) = (Σ_i |α_i|^q) · 2^{−l η(q)}`.
pub fn oracle_dbwc_coeff_sf(
    weights: &[f64],
    alpha: &[f64],
    q: f64,
    j: usize,
    depth: usize,
) -> Result<f64> {
    if j == 0 || j > depth {
        return Err(Error::invalid(format!("octave {j} outside 1..={depth}")));
    }
    let l = (depth + 1 - j) as f64;
    let alpha_q: f64 = alpha.iter().map(|a| a.abs().powf(q)).sum();
    Ok(alpha_q * 2.0_f64.powf(-l * dbwc_eta(weights, q)))
}
