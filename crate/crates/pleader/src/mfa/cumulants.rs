//! Sample cumulants of log-leaders, octave by octave.
//!
//! `C(m, j)` is the m-th cumulant of `ln ℓ_{j,·}` estimated from the retained
//! positions of octave `j`. Orders one to three are supported, using the
//! unbiased k-statistics: the sample mean, the `n−1` variance, and
//! `k₃ = n² m₃ / ((n−1)(n−2))` with `m₃` the third central moment. Octaves
//! with too few positions for an order yield `NaN` for that order so that
//! downstream fits can skip them explicitly.

use serde::Serialize;

use crate::error::Result;

use super::leaders::PLeaderField;
use super::structure::positive_retained;

/// Log-leader cumulants on a grid of orders and octaves.
#[derive(Debug, Clone, Serialize)]
pub struct CumulantTable {
    /// Aggregation exponent of the underlying leaders.
    pub p: f64,
    /// Highest cumulant order carried (1..=3).
    pub m_max: usize,
    /// Practical octave number of column 0.
    pub octave_start: usize,
    /// Positive retained positions per octave.
    pub n_j: Vec<usize>,
    /// `c[m-1][ji]` is `C(m, octave_start + ji)`.
    pub c: Vec<Vec<f64>>,
    /// Whether the finite-resolution correction has been applied.
    pub corrected: bool,
    /// Exponent `η(p)` used by the correction, when applied.
    pub eta_used: Option<f64>,
}

impl CumulantTable {
    pub fn n_octaves(&self) -> usize {
        self.n_j.len()
    }

    /// Row of `C(m, ·)` for order `m` (1-based).
    pub fn order(&self, m: usize) -> &[f64] {
        &self.c[m - 1]
    }

    /// Count of finer-or-equal octaves at column `ji`.
    pub fn octaves_below(&self, ji: usize) -> usize {
        self.octave_start + ji
    }
}

/// Estimates log-leader cumulants up to order `m_max` (1..=3).
pub fn cumulants(field: &PLeaderField, m_max: usize) -> Result<CumulantTable> {
    if !(1..=3).contains(&m_max) {
        return Err(crate::error::Error::invalid(format!(
            "cumulant order must be 1..=3, got {m_max}"
        )));
    }
    let mut n_j = Vec::with_capacity(field.n_octaves());
    let mut c = vec![Vec::with_capacity(field.n_octaves()); m_max];
    for idx in 0..field.n_octaves() {
        let logs: Vec<f64> = positive_retained(field, idx)?
            .into_iter()
            .map(f64::ln)
            .collect();
        n_j.push(logs.len());
        let k = k_statistics(&logs);
        for (m, row) in c.iter_mut().enumerate() {
            row.push(k[m]);
        }
    }
    Ok(CumulantTable {
        p: field.p,
        m_max,
        octave_start: field.finest_octave,
        n_j,
        c,
        corrected: false,
        eta_used: None,
    })
}

/// Unbiased k-statistics of orders 1..=3; entries the sample cannot support
/// are `NaN`.
fn k_statistics(x: &[f64]) -> [f64; 3] {
    let n = x.len();
    if n == 0 {
        return [f64::NAN; 3];
    }
    let nf = n as f64;
    let mean = x.iter().sum::<f64>() / nf;
    let (mut m2, mut m3) = (0.0, 0.0);
    for &v in x {
        let d = v - mean;
        m2 += d * d;
        m3 += d * d * d;
    }
    m2 /= nf;
    m3 /= nf;
    let k2 = if n >= 2 { nf / (nf - 1.0) * m2 } else { f64::NAN };
    let k3 = if n >= 3 {
        nf * nf / ((nf - 1.0) * (nf - 2.0)) * m3
    } else {
        f64::NAN
    };
    [mean, k2, k3]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mfa::leaders::{compute_pleaders, LeaderMode};
    use crate::wavelet::{ArrayData, Boundary, OctaveDetail, WaveletPyramid};

    fn single_octave_field(values: Vec<f64>) -> PLeaderField {
        let pyr = WaveletPyramid {
            dimension: 1,
            vanishing_moments: 1,
            boundary: Boundary::Periodic,
            discard_border: 0,
            octaves: vec![OctaveDetail {
                subbands: vec![ArrayData::One(values)],
            }],
            approx: None,
        };
        compute_pleaders(&pyr, 1.0, LeaderMode::Restricted).unwrap()
    }

    #[test]
    fn matches_hand_computed_k_statistics() {
        // ln-leaders are ln(e^0)=0, ln(e^1)=1, ln(e^2)=2, ln(e^3)=3.
        let f = single_octave_field(vec![1.0, 1.0_f64.exp(), 2.0_f64.exp(), 3.0_f64.exp()]);
        let t = cumulants(&f, 3).unwrap();
        assert!((t.c[0][0] - 1.5).abs() < 1e-12);
        // m2 = 1.25, k2 = 4/3·1.25 = 5/3.
        assert!((t.c[1][0] - 5.0 / 3.0).abs() < 1e-12);
        // Symmetric sample: third central moment is exactly zero.
        assert!(t.c[2][0].abs() < 1e-12);
    }

    #[test]
    fn skewed_sample_third_cumulant() {
        let f = single_octave_field(vec![
            1.0_f64.exp(),
            1.0_f64.exp(),
            1.0_f64.exp(),
            4.0_f64.exp(),
        ]);
        let t = cumulants(&f, 3).unwrap();
        // logs = [1,1,1,4]: mean 7/4, m3 = ((−3/4)³·3 + (9/4)³)/4 = 2.53125,
        // k3 = 16/(3·2)·m3 = 6.75.
        assert!((t.c[0][0] - 1.75).abs() < 1e-12);
        assert!((t.c[2][0] - 6.75).abs() < 1e-12);
    }

    #[test]
    fn short_octaves_yield_nan_not_panic() {
        let f = single_octave_field(vec![1.0, 2.0]);
        let t = cumulants(&f, 3).unwrap();
        assert!(t.c[0][0].is_finite());
        assert!(t.c[1][0].is_finite());
        assert!(t.c[2][0].is_nan());
    }
}
