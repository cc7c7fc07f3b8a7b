//! Empirical structure functions over octaves.
//!
//! For a field of p-leaders the structure function at octave `j` is the
//! spatial average `S(q, j) = (1/n_j) Σ_k ℓ_{j,k}^q`; on raw wavelet
//! coefficients it averages `|c_λ|^q` over every coefficient of the octave.
//! Scaling exponents are slopes of `log2 S` against the octave number.
//!
//! Zero leaders cannot enter negative moments and would bias logarithmic
//! statistics, so they are dropped uniformly: every statistic on leaders uses
//! the strictly positive values of an octave, and an octave whose zero
//! fraction exceeds 1% is reported as degenerate rather than silently kept.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::wavelet::WaveletPyramid;

use super::leaders::PLeaderField;

/// Fraction of zero-valued leaders an octave may contain before the
/// statistics are considered meaningless.
pub const MAX_ZERO_FRACTION: f64 = 0.01;

/// Structure-function values on a grid of moment orders and octaves.
#[derive(Debug, Clone, Serialize)]
pub struct StructureTable {
    /// Aggregation exponent of the underlying leaders; `None` when the table
    /// was built from raw coefficients.
    pub p: Option<f64>,
    pub q: Vec<f64>,
    /// Practical octave number of column 0.
    pub octave_start: usize,
    /// Retained positions per octave (after border discard and, for leader
    /// tables, zero removal).
    pub n_j: Vec<usize>,
    /// `s[qi][ji]` is `S(q[qi], octave_start + ji)`.
    pub s: Vec<Vec<f64>>,
    /// Whether the finite-resolution correction has been applied.
    pub corrected: bool,
    /// Exponent `η(p)` used by the correction, when applied.
    pub eta_used: Option<f64>,
}

impl StructureTable {
    pub fn n_octaves(&self) -> usize {
        self.n_j.len()
    }

    /// Row of `S(q, ·)` for the `qi`-th moment order.
    pub fn row(&self, qi: usize) -> &[f64] {
        &self.s[qi]
    }

    /// Count of finer-or-equal octaves at column `ji`, as seen by the leader
    /// recursion that produced this table.
    pub fn octaves_below(&self, ji: usize) -> usize {
        self.octave_start + ji
    }
}

/// Strictly positive retained leader values of one octave, enforcing the
/// zero-fraction policy.
pub(crate) fn positive_retained(field: &PLeaderField, idx: usize) -> Result<Vec<f64>> {
    let vals = field.retained_values(idx);
    let total = vals.len();
    if total == 0 {
        return Err(Error::invalid(format!(
            "octave {} has no retained positions (border discard too large)",
            field.octave_number(idx)
        )));
    }
    let pos: Vec<f64> = vals.into_iter().filter(|v| *v > 0.0).collect();
    let zeros = total - pos.len();
    if zeros as f64 > MAX_ZERO_FRACTION * total as f64 {
        return Err(Error::DegenerateLeaders {
            octave: field.octave_number(idx),
            zeros,
            total,
        });
    }
    Ok(pos)
}

/// Structure functions of a p-leader field on the moment grid `q`.
pub fn sf_leaders(field: &PLeaderField, q: &[f64]) -> Result<StructureTable> {
    ensure_q_grid(q)?;
    let mut n_j = Vec::with_capacity(field.n_octaves());
    let mut s = vec![Vec::with_capacity(field.n_octaves()); q.len()];
    for idx in 0..field.n_octaves() {
        let vals = positive_retained(field, idx)?;
        n_j.push(vals.len());
        for (qi, &qq) in q.iter().enumerate() {
            s[qi].push(moment(&vals, qq));
        }
    }
    Ok(StructureTable {
        p: Some(field.p),
        q: q.to_vec(),
        octave_start: field.finest_octave,
        n_j,
        s,
        corrected: false,
        eta_used: None,
    })
}

/// Structure functions of raw wavelet coefficients: the per-position sum of
/// `|c|^q` over subbands, averaged over positions. Only non-negative moment
/// orders are meaningful here: coefficients vanish on smooth stretches, so
/// negative moments diverge by construction.
pub fn sf_coefficients(pyramid: &WaveletPyramid, q: &[f64]) -> Result<StructureTable> {
    ensure_q_grid(q)?;
    if let Some(&bad) = q.iter().find(|&&qq| qq < 0.0) {
        return Err(Error::NegativeMomentOnCoefficients(bad));
    }
    let border = pyramid.discard_border;
    let mut n_j = Vec::with_capacity(pyramid.n_octaves());
    let mut s = vec![Vec::with_capacity(pyramid.n_octaves()); q.len()];
    for oct in &pyramid.octaves {
        let per_band: Vec<Vec<f64>> = oct.subbands.iter().map(|sb| sb.interior(border)).collect();
        let n_pos = per_band.first().map_or(0, Vec::len);
        if n_pos == 0 {
            return Err(Error::invalid(
                "octave has no retained coefficients (border discard too large)",
            ));
        }
        n_j.push(n_pos);
        for (qi, &qq) in q.iter().enumerate() {
            let total: f64 = per_band
                .iter()
                .flat_map(|band| band.iter())
                .map(|&c| power_abs(c, qq))
                .sum();
            s[qi].push(total / n_pos as f64);
        }
    }
    Ok(StructureTable {
        p: None,
        q: q.to_vec(),
        octave_start: 1,
        n_j,
        s,
        corrected: false,
        eta_used: None,
    })
}

/// `|c|^q` with the `q = 0` convention `|c|^0 = 1` even at zero.
fn power_abs(c: f64, q: f64) -> f64 {
    if q == 0.0 {
        1.0
    } else {
        c.abs().powf(q)
    }
}

fn moment(vals: &[f64], q: f64) -> f64 {
    if q == 0.0 {
        return 1.0;
    }
    vals.iter().map(|v| v.powf(q)).sum::<f64>() / vals.len() as f64
}

fn ensure_q_grid(q: &[f64]) -> Result<()> {
    if q.is_empty() {
        return Err(Error::invalid("empty moment grid"));
    }
    if let Some(&bad) = q.iter().find(|&&qq| !qq.is_finite()) {
        return Err(Error::invalid(format!("non-finite moment order {bad}")));
    }
    Ok(())
}
