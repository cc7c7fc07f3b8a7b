//! Weighted linear regression across octaves.
//!
//! Scaling exponents are slopes of octave-indexed statistics. The fit is
//! ordinary weighted least squares on the points `(j, y_j)` for octaves
//! inside a chosen range, with either uniform weights or weights equal to
//! the number of samples contributing to each octave. Octaves whose
//! statistic is not finite (for example a third cumulant on a two-sample
//! octave) are skipped rather than poisoning the fit.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Weighting of octaves in a scaling fit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightScheme {
    /// Every octave counts the same.
    Uniform,
    /// Each octave is weighted by its sample count, favouring fine octaves.
    #[default]
    Counts,
}

/// Inclusive octave range `[j1, j2]` for a scaling fit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OctaveRange {
    pub j1: usize,
    pub j2: usize,
}

impl OctaveRange {
    pub fn new(j1: usize, j2: usize) -> Result<Self> {
        if j1 == 0 || j2 < j1 {
            return Err(Error::invalid(format!(
                "invalid octave range [{j1}, {j2}]"
            )));
        }
        Ok(OctaveRange { j1, j2 })
    }
}

/// A fitted line over octaves.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct FitLine {
    pub slope: f64,
    pub intercept: f64,
    /// Standard error of the slope; zero when only two octaves enter.
    pub slope_stderr: f64,
    /// Octaves that actually entered the fit.
    pub n_octaves: usize,
}

/// Fits `y` against the octave number over `range`.
///
/// `y[ji]` and `n_j[ji]` describe octave `octave_start + ji`. Octaves outside
/// the table or with non-finite `y` are skipped; fewer than two surviving
/// octaves is an error.
pub fn fit_octaves(
    y: &[f64],
    n_j: &[usize],
    octave_start: usize,
    range: OctaveRange,
    scheme: WeightScheme,
) -> Result<FitLine> {
    debug_assert_eq!(y.len(), n_j.len());
    let mut pts: Vec<(f64, f64, f64)> = Vec::new();
    for j in range.j1..=range.j2 {
        if j < octave_start {
            continue;
        }
        let ji = j - octave_start;
        if ji >= y.len() || !y[ji].is_finite() {
            continue;
        }
        let w = match scheme {
            WeightScheme::Uniform => 1.0,
            WeightScheme::Counts => n_j[ji] as f64,
        };
        if w > 0.0 {
            pts.push((j as f64, y[ji], w));
        }
    }
    if pts.len() < 2 {
        return Err(Error::RegressionRange {
            j1: range.j1,
            j2: range.j2,
            available: pts.len(),
        });
    }
    Ok(weighted_line(&pts))
}

fn weighted_line(pts: &[(f64, f64, f64)]) -> FitLine {
    let w_total: f64 = pts.iter().map(|p| p.2).sum();
    let x_bar = pts.iter().map(|(x, _, w)| w * x).sum::<f64>() / w_total;
    let y_bar = pts.iter().map(|(_, y, w)| w * y).sum::<f64>() / w_total;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for &(x, y, w) in pts {
        sxx += w * (x - x_bar) * (x - x_bar);
        sxy += w * (x - x_bar) * (y - y_bar);
    }
    let slope = sxy / sxx;
    let intercept = y_bar - slope * x_bar;
    let n = pts.len();
    let slope_stderr = if n > 2 {
        let ssr: f64 = pts
            .iter()
            .map(|&(x, y, w)| {
                let r = y - (intercept + slope * x);
                w * r * r
            })
            .sum();
        (ssr / (n as f64 - 2.0) / sxx).max(0.0).sqrt()
    } else {
        0.0
    };
    FitLine {
        slope,
        intercept,
        slope_stderr,
        n_octaves: n,
    }
}
