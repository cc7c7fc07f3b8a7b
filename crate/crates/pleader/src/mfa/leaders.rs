//! p-leader computation on wavelet pyramids.
//!
//! The p-leader at octave `j`, position `k` aggregates coefficient powers
//! over all finer-or-equal octaves inside a spatial neighbourhood:
//! `ℓ_{j,k} = ( Σ_{j' <= j} Σ_{λ' ⊂ neighbourhood} |c_{λ'}|^p 2^{-d(j-j')} )^{1/p}`.
//! With [`LeaderMode::Restricted`] the neighbourhood is the dyadic cube
//! `λ_{j,k}` itself; with [`LeaderMode::Full`] it is the 3^d block of
//! neighbouring cubes (periodic wraparound). As `p → ∞` the weighted sum
//! becomes a running maximum, recovering ordinary wavelet leaders.
//!
//! The recursion runs fine-to-coarse: each octave's restricted sum is its own
//! coefficient power plus `2^{-d}` times the sum over its 2^d children.

use ndarray::Array2;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::wavelet::{ArrayData, WaveletPyramid};

/// Spatial neighbourhood entering the leader at each octave.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LeaderMode {
    /// Only the dyadic cube itself.
    #[default]
    Restricted,
    /// The 3^d block of neighbouring cubes.
    Full,
}

/// p-leaders of a pyramid, octave by octave (same indexing as the pyramid).
#[derive(Debug, Clone)]
pub struct PLeaderField {
    /// Aggregation exponent; finite positive, or `f64::INFINITY` for leaders.
    pub p: f64,
    pub mode: LeaderMode,
    pub dimension: u8,
    /// Practical index of the finest octave entering the recursion.
    pub finest_octave: usize,
    /// Border positions (per side, per axis) excluded from statistics.
    pub discard_border: usize,
    /// `octaves[i]` holds octave `j = finest_octave + i`.
    pub octaves: Vec<ArrayData>,
}

impl PLeaderField {
    /// Number of octaves carried by the field.
    pub fn n_octaves(&self) -> usize {
        self.octaves.len()
    }

    /// Number of finer-or-equal octaves available at stored octave index
    /// `idx` (0-based); this is the truncation length of the leader sum.
    pub fn octaves_below(&self, idx: usize) -> usize {
        idx + 1
    }

    /// Practical octave number of stored index `idx`.
    pub fn octave_number(&self, idx: usize) -> usize {
        self.finest_octave + idx
    }

    /// Leader values at stored index `idx` with the border discard applied.
    pub fn retained_values(&self, idx: usize) -> Vec<f64> {
        self.octaves[idx].interior(self.discard_border)
    }
}

/// Computes p-leaders over all octaves of the pyramid.
pub fn compute_pleaders(
    pyramid: &WaveletPyramid,
    p: f64,
    mode: LeaderMode,
) -> Result<PLeaderField> {
    compute_pleaders_from(pyramid, p, mode, 1)
}

/// Computes p-leaders with the recursion starting at `finest_octave`
/// (coefficients at finer octaves are ignored entirely).
pub fn compute_pleaders_from(
    pyramid: &WaveletPyramid,
    p: f64,
    mode: LeaderMode,
    finest_octave: usize,
) -> Result<PLeaderField> {
    if !(p > 0.0) {
        return Err(Error::invalid(format!(
            "p must be positive (or infinite); got {p}"
        )));
    }
    if finest_octave == 0 || finest_octave > pyramid.n_octaves() {
        return Err(Error::invalid(format!(
            "finest_octave {finest_octave} outside 1..={}",
            pyramid.n_octaves()
        )));
    }
    let infinite = p.is_infinite();
    let d = pyramid.dimension;
    let child_weight = 2.0_f64.powi(-(d as i32));

    let mut octaves = Vec::with_capacity(pyramid.n_octaves() - finest_octave + 1);
    let mut acc: Option<ArrayData> = None;
    for j in finest_octave..=pyramid.n_octaves() {
        let oct = pyramid.octave(j);
        let own = own_power(oct, p, infinite)?;
        let next = match (&acc, own) {
            (None, own) => own,
            (Some(prev), own) => combine(prev, own, child_weight, infinite),
        };
        octaves.push(finalize(&next, p, mode, infinite));
        acc = Some(next);
    }
    Ok(PLeaderField {
        p,
        mode,
        dimension: d,
        finest_octave,
        discard_border: pyramid.discard_border,
        octaves,
    })
}

/// Per-position aggregate of own coefficient powers across subbands.
fn own_power(oct: &crate::wavelet::OctaveDetail, p: f64, infinite: bool) -> Result<ArrayData> {
    match &oct.subbands[0] {
        ArrayData::One(first) => {
            let n = first.len();
            let mut out = vec![0.0_f64; n];
            for sb in &oct.subbands {
                let v = match sb {
                    ArrayData::One(v) => v,
                    _ => return Err(Error::DimensionMismatch("mixed subband ranks".into())),
                };
                for (o, &c) in out.iter_mut().zip(v) {
                    let a = c.abs();
                    if infinite {
                        *o = o.max(a);
                    } else {
                        *o += a.powf(p);
                    }
                }
            }
            Ok(ArrayData::One(out))
        }
        ArrayData::Two(first) => {
            let dim = first.dim();
            let mut out = Array2::zeros(dim);
            for sb in &oct.subbands {
                let a = match sb {
                    ArrayData::Two(a) => a,
                    _ => return Err(Error::DimensionMismatch("mixed subband ranks".into())),
                };
                for (o, &c) in out.iter_mut().zip(a.iter()) {
                    let v = c.abs();
                    if infinite {
                        *o = f64::max(*o, v);
                    } else {
                        *o += v.powf(p);
                    }
                }
            }
            Ok(ArrayData::Two(out))
        }
    }
}

/// Folds the finer-octave accumulator into the current octave's own powers.
fn combine(prev: &ArrayData, own: ArrayData, child_weight: f64, infinite: bool) -> ArrayData {
    match (prev, own) {
        (ArrayData::One(fine), ArrayData::One(mut own)) => {
            for (k, o) in own.iter_mut().enumerate() {
                let (a, b) = (fine[2 * k], fine[2 * k + 1]);
                if infinite {
                    *o = o.max(a).max(b);
                } else {
                    *o += child_weight * (a + b);
                }
            }
            ArrayData::One(own)
        }
        (ArrayData::Two(fine), ArrayData::Two(mut own)) => {
            for ((r, c), o) in own.indexed_iter_mut() {
                if infinite {
                    let m = fine[[2 * r, 2 * c]]
                        .max(fine[[2 * r, 2 * c + 1]])
                        .max(fine[[2 * r + 1, 2 * c]])
                        .max(fine[[2 * r + 1, 2 * c + 1]]);
                    *o = o.max(m);
                } else {
                    let s = fine[[2 * r, 2 * c]]
                        + fine[[2 * r, 2 * c + 1]]
                        + fine[[2 * r + 1, 2 * c]]
                        + fine[[2 * r + 1, 2 * c + 1]];
                    *o += child_weight * s;
                }
            }
            ArrayData::Two(own)
        }
        _ => unreachable!("pyramid octaves change rank"),
    }
}

/// Applies the neighbourhood mode and the final `1/p` power.
fn finalize(acc: &ArrayData, p: f64, mode: LeaderMode, infinite: bool) -> ArrayData {
    let root = |s: f64| if infinite { s } else { s.powf(1.0 / p) };
    match acc {
        ArrayData::One(v) => {
            let n = v.len();
            let out: Vec<f64> = (0..n)
                .map(|k| match mode {
                    LeaderMode::Restricted => root(v[k]),
                    LeaderMode::Full => {
                        let (l, r) = (v[(k + n - 1) % n], v[(k + 1) % n]);
                        if infinite {
                            v[k].max(l).max(r)
                        } else {
                            root(l + v[k] + r)
                        }
                    }
                })
                .collect();
            ArrayData::One(out)
        }
        ArrayData::Two(a) => {
            let (rows, cols) = a.dim();
            let out = Array2::from_shape_fn((rows, cols), |(r, c)| match mode {
                LeaderMode::Restricted => root(a[[r, c]]),
                LeaderMode::Full => {
                    let mut agg = if infinite { f64::NEG_INFINITY } else { 0.0 };
                    for dr in [rows - 1, 0, 1] {
                        for dc in [cols - 1, 0, 1] {
                            let v = a[[(r + dr) % rows, (c + dc) % cols]];
                            if infinite {
                                agg = agg.max(v);
                            } else {
                                agg += v;
                            }
                        }
                    }
                    if infinite {
                        agg
                    } else {
                        root(agg)
                    }
                }
            });
            ArrayData::Two(out)
        }
    }
}
