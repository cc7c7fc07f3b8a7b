//! Periodic discrete wavelet transforms in one and two dimensions.
//!
//! Detail coefficients are stored with the normalization `2^{-j d/2}` applied
//! to the usual orthonormal fast-transform outputs, so that coefficient
//! magnitudes scale as `2^{j h}` for `h`-regular data in the crate's octave
//! convention (octave 1 finest). The final approximation is kept, scaled the
//! same way, so pyramid energy can be reconciled with the input.

use ndarray::Array2;

use crate::error::{Error, Result};

use super::filters::WaveletFilter;

/// Sample values of a signal, one- or two-dimensional.
#[derive(Debug, Clone)]
pub enum ArrayData {
    One(Vec<f64>),
    Two(Array2<f64>),
}

impl ArrayData {
    /// Number of stored positions (product over axes).
    pub fn len(&self) -> usize {
        match self {
            ArrayData::One(v) => v.len(),
            ArrayData::Two(a) => a.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dimension(&self) -> u8 {
        match self {
            ArrayData::One(_) => 1,
            ArrayData::Two(_) => 2,
        }
    }

    fn ensure_finite(&self, context: &'static str) -> Result<()> {
        let bad = match self {
            ArrayData::One(v) => v.iter().position(|x| !x.is_finite()),
            ArrayData::Two(a) => a.iter().position(|x| !x.is_finite()),
        };
        match bad {
            Some(index) => Err(Error::NonFinite { context, index }),
            None => Ok(()),
        }
    }

    /// Values with `border` positions stripped from each side of every axis.
    /// Returns an empty vector when the border swallows the whole array.
    pub fn interior(&self, border: usize) -> Vec<f64> {
        match self {
            ArrayData::One(v) => {
                if 2 * border >= v.len() {
                    Vec::new()
                } else {
                    v[border..v.len() - border].to_vec()
                }
            }
            ArrayData::Two(a) => {
                let (rows, cols) = a.dim();
                if 2 * border >= rows || 2 * border >= cols {
                    Vec::new()
                } else {
                    let mut out = Vec::with_capacity((rows - 2 * border) * (cols - 2 * border));
                    for r in border..rows - border {
                        for c in border..cols - border {
                            out.push(a[[r, c]]);
                        }
                    }
                    out
                }
            }
        }
    }
}

/// A sampled signal with a physical sampling step.
#[derive(Debug, Clone)]
pub struct Signal {
    pub data: ArrayData,
    /// Physical spacing between samples (seconds, pixels, ...); informational.
    pub sample_period: f64,
}

impl Signal {
    pub fn new_1d(values: Vec<f64>, sample_period: f64) -> Result<Self> {
        let data = ArrayData::One(values);
        data.ensure_finite("signal")?;
        if sample_period <= 0.0 || !sample_period.is_finite() {
            return Err(Error::invalid("sample_period must be positive and finite"));
        }
        Ok(Signal { data, sample_period })
    }

    pub fn new_2d(values: Array2<f64>, sample_period: f64) -> Result<Self> {
        let data = ArrayData::Two(values);
        data.ensure_finite("signal")?;
        if sample_period <= 0.0 || !sample_period.is_finite() {
            return Err(Error::invalid("sample_period must be positive and finite"));
        }
        Ok(Signal { data, sample_period })
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }
}

/// Boundary handling of the transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    /// Circular convolution; preserves orthonormality exactly and keeps the
    /// 3-neighbourhood of every position well defined.
    Periodic,
}

/// Detail coefficients of one octave: one subband in 1D, three in 2D.
#[derive(Debug, Clone)]
pub struct OctaveDetail {
    pub subbands: Vec<ArrayData>,
}

impl OctaveDetail {
    /// Number of spatial positions at this octave (subbands share the grid).
    pub fn n_positions(&self) -> usize {
        self.subbands.first().map_or(0, ArrayData::len)
    }
}

/// Multiresolution detail coefficients, finest octave first.
#[derive(Debug, Clone)]
pub struct WaveletPyramid {
    pub dimension: u8,
    pub vanishing_moments: usize,
    pub boundary: Boundary,
    /// Positions to drop from each border (per axis, per octave) when
    /// accumulating statistics. Zero keeps everything.
    pub discard_border: usize,
    /// `octaves[i]` holds octave `j = i + 1`; octave 1 is the finest.
    pub octaves: Vec<OctaveDetail>,
    /// Final approximation at the coarsest octave, same normalization.
    pub approx: Option<ArrayData>,
}

impl WaveletPyramid {
    pub fn n_octaves(&self) -> usize {
        self.octaves.len()
    }

    /// Detail subbands of octave `j` (1-based).
    pub fn octave(&self, j: usize) -> &OctaveDetail {
        &self.octaves[j - 1]
    }

    /// Positions of octave `j` that survive the border discard.
    pub fn retained_positions(&self, j: usize) -> usize {
        let b = 2 * self.discard_border;
        match self.octave(j).subbands.first() {
            Some(ArrayData::One(v)) => v.len().saturating_sub(b),
            Some(ArrayData::Two(a)) => {
                let (rows, cols) = a.dim();
                rows.saturating_sub(b) * cols.saturating_sub(b)
            }
            None => 0,
        }
    }

    /// Sum of squared coefficients with the `2^{-jd/2}` normalization undone;
    /// equals the input energy for an orthonormal periodic transform.
    pub fn energy(&self) -> f64 {
        let d = self.dimension as f64;
        let mut total = 0.0;
        for (i, oct) in self.octaves.iter().enumerate() {
            let j = (i + 1) as f64;
            let undo = 2.0_f64.powf(j * d / 2.0);
            for sb in &oct.subbands {
                let sum: f64 = match sb {
                    ArrayData::One(v) => v.iter().map(|c| (c * undo).powi(2)).sum(),
                    ArrayData::Two(a) => a.iter().map(|c| (c * undo).powi(2)).sum(),
                };
                total += sum;
            }
        }
        if let Some(approx) = &self.approx {
            let j = self.octaves.len() as f64;
            let undo = 2.0_f64.powf(j * d / 2.0);
            total += match approx {
                ArrayData::One(v) => v.iter().map(|c| (c * undo).powi(2)).sum::<f64>(),
                ArrayData::Two(a) => a.iter().map(|c| (c * undo).powi(2)).sum::<f64>(),
            };
        }
        total
    }
}

/// Largest feasible decomposition depth for a 1D length.
pub fn max_octaves_1d(len: usize, filter_len: usize) -> usize {
    let mut j = 0;
    let mut n = len;
    while n % 2 == 0 && n / 2 >= filter_len.max(2) {
        n /= 2;
        j += 1;
    }
    j
}

/// Coarsest octave kept by [`max_analysis_octaves_1d`] must still retain
/// this many positions after the border discard.
pub const MIN_RETAINED_POSITIONS: usize = 8;

/// Largest decomposition depth whose coarsest octave still carries
/// [`MIN_RETAINED_POSITIONS`] positions after stripping `filter_len` from
/// each border. Use this instead of [`max_octaves_1d`] for non-periodic
/// data, where the wrap-affected strip is discarded from statistics.
pub fn max_analysis_octaves_1d(len: usize, filter_len: usize) -> usize {
    let floor = (2 * filter_len + MIN_RETAINED_POSITIONS).max(filter_len.max(2));
    let mut j = 0;
    let mut n = len;
    while n % 2 == 0 && n / 2 >= floor {
        n /= 2;
        j += 1;
    }
    j
}

fn check_depth(len: usize, filter_len: usize, octaves: usize) -> Result<()> {
    if octaves == 0 {
        return Err(Error::invalid("at least one octave is required"));
    }
    let max = max_octaves_1d(len, filter_len);
    if octaves > max {
        return Err(Error::DepthTooLarge {
            requested: octaves,
            max_feasible: max,
            len,
            filter_len,
        });
    }
    Ok(())
}

/// One periodic analysis step: returns (approximation, detail), half length.
fn analysis_step(x: &[f64], filter: &WaveletFilter) -> (Vec<f64>, Vec<f64>) {
    let n = x.len();
    let half = n / 2;
    let taps = filter.len();
    let mut approx = vec![0.0; half];
    let mut detail = vec![0.0; half];
    for k in 0..half {
        let mut a = 0.0;
        let mut d = 0.0;
        for i in 0..taps {
            let idx = (2 * k + i) % n;
            a += filter.lowpass[i] * x[idx];
            d += filter.highpass[i] * x[idx];
        }
        approx[k] = a;
        detail[k] = d;
    }
    (approx, detail)
}

/// Periodic 1D DWT over `octaves` levels.
pub fn dwt_1d(signal: &Signal, filter: &WaveletFilter, octaves: usize) -> Result<WaveletPyramid> {
    let x = match &signal.data {
        ArrayData::One(v) => v,
        ArrayData::Two(_) => {
            return Err(Error::DimensionMismatch(
                "dwt_1d requires a one-dimensional signal".into(),
            ))
        }
    };
    let n = x.len();
    if n % (1 << octaves) != 0 {
        return Err(Error::LengthNotDyadic { len: n, octaves });
    }
    check_depth(n, filter.len(), octaves)?;

    let mut details = Vec::with_capacity(octaves);
    let mut current = x.clone();
    for j in 1..=octaves {
        let (approx, mut detail) = analysis_step(&current, filter);
        let norm = 2.0_f64.powf(-(j as f64) / 2.0);
        for v in detail.iter_mut() {
            *v *= norm;
        }
        details.push(OctaveDetail {
            subbands: vec![ArrayData::One(detail)],
        });
        current = approx;
    }
    let norm = 2.0_f64.powf(-(octaves as f64) / 2.0);
    let approx: Vec<f64> = current.iter().map(|v| v * norm).collect();
    Ok(WaveletPyramid {
        dimension: 1,
        vanishing_moments: filter.vanishing_moments,
        boundary: Boundary::Periodic,
        // The circular convolution sees the wrap seam of non-periodic data;
        // one filter length per side covers the contaminated strip at every
        // octave, including its spread through the leader recursion.
        discard_border: filter.len(),
        octaves: details,
        approx: Some(ArrayData::One(approx)),
    })
}

/// One separable 2D analysis step: returns (LL, [LH, HL, HH]).
///
/// Rows (axis 1) are filtered first, then columns (axis 0). The subband
/// naming records which axis saw the high-pass: `LH` is low along rows and
/// high along columns, `HH` high along both.
fn analysis_step_2d(x: &Array2<f64>, filter: &WaveletFilter) -> (Array2<f64>, [Array2<f64>; 3]) {
    let (rows, cols) = x.dim();
    let (hr, hc) = (rows / 2, cols / 2);

    // Filter along each row.
    let mut low = Array2::zeros((rows, hc));
    let mut high = Array2::zeros((rows, hc));
    for r in 0..rows {
        let row: Vec<f64> = x.row(r).to_vec();
        let (a, d) = analysis_step(&row, filter);
        for c in 0..hc {
            low[[r, c]] = a[c];
            high[[r, c]] = d[c];
        }
    }
    // Filter along each column of both halves.
    let mut ll = Array2::zeros((hr, hc));
    let mut lh = Array2::zeros((hr, hc));
    let mut hl = Array2::zeros((hr, hc));
    let mut hh = Array2::zeros((hr, hc));
    for c in 0..hc {
        let col_low: Vec<f64> = low.column(c).to_vec();
        let (a, d) = analysis_step(&col_low, filter);
        for r in 0..hr {
            ll[[r, c]] = a[r];
            lh[[r, c]] = d[r];
        }
        let col_high: Vec<f64> = high.column(c).to_vec();
        let (a, d) = analysis_step(&col_high, filter);
        for r in 0..hr {
            hl[[r, c]] = a[r];
            hh[[r, c]] = d[r];
        }
    }
    (ll, [lh, hl, hh])
}

/// Periodic separable 2D DWT over `octaves` levels.
pub fn dwt_2d(signal: &Signal, filter: &WaveletFilter, octaves: usize) -> Result<WaveletPyramid> {
    let x = match &signal.data {
        ArrayData::Two(a) => a,
        ArrayData::One(_) => {
            return Err(Error::DimensionMismatch(
                "dwt_2d requires a two-dimensional signal".into(),
            ))
        }
    };
    let (rows, cols) = x.dim();
    for n in [rows, cols] {
        if n % (1 << octaves) != 0 {
            return Err(Error::LengthNotDyadic { len: n, octaves });
        }
        check_depth(n, filter.len(), octaves)?;
    }

    let mut details = Vec::with_capacity(octaves);
    let mut current = x.clone();
    for j in 1..=octaves {
        let (ll, bands) = analysis_step_2d(&current, filter);
        let norm = 2.0_f64.powf(-(j as f64));
        let subbands = bands
            .into_iter()
            .map(|mut b| {
                b.mapv_inplace(|v| v * norm);
                ArrayData::Two(b)
            })
            .collect();
        details.push(OctaveDetail { subbands });
        current = ll;
    }
    let norm = 2.0_f64.powf(-(octaves as f64));
    current.mapv_inplace(|v| v * norm);
    Ok(WaveletPyramid {
        dimension: 2,
        vanishing_moments: filter.vanishing_moments,
        boundary: Boundary::Periodic,
        discard_border: filter.len(),
        octaves: details,
        approx: Some(ArrayData::Two(current)),
    })
}
