//! Scaling exponents from octave-indexed statistics.
//!
//! All slopes are taken against the practical octave number (octave 1 is the
//! finest), so exponents of self-similar data come out positive: `ζ(q)` is
//! the slope of `log2 S(q, j)`, `η(q)` the analogous slope on raw
//! coefficients, and the log-cumulant `c_m` is `log2(e)` times the slope of
//! `C(m, j)`.
//!
//! The critical exponent `p₀` is the largest `p` with `η(p) ≥ 0`; it is
//! located by bisecting the piecewise-linear interpolant of `η̂` over a grid
//! of `p` values.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::wavelet::WaveletPyramid;

use super::cumulants::CumulantTable;
use super::regression::{fit_octaves, FitLine, OctaveRange, WeightScheme};
use super::structure::{sf_coefficients, StructureTable};

/// Width below which the `p₀` bisection bracket is considered converged.
pub const P0_TOLERANCE: f64 = 1e-3;

/// A fitted scaling exponent `ζ(q)`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ZetaEstimate {
    pub q: f64,
    pub zeta: f64,
    pub stderr: f64,
}

/// A fitted log-cumulant `c_m`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CumulantEstimate {
    pub m: usize,
    pub value: f64,
    pub stderr: f64,
}

/// A fitted coefficient-moment exponent `η(p)`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct EtaEstimate {
    pub p: f64,
    pub eta: f64,
    pub stderr: f64,
}

/// Location of the critical integrability exponent relative to the grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum P0Estimate {
    /// `η` changes sign inside the grid; the root of the interpolant.
    Finite(f64),
    /// `η` is still positive at the largest grid point.
    AboveGrid { p_max: f64 },
    /// `η` is already non-positive at the smallest grid point.
    BelowGrid { p_min: f64 },
}

/// Default `p` grid for `p₀` estimation: 0.25 to 20 in steps of 0.25.
pub fn default_p_grid() -> Vec<f64> {
    (1..=80).map(|k| k as f64 * 0.25).collect()
}

/// Slopes of `log2 S(q, ·)` for every moment order in the table.
pub fn estimate_zeta(
    table: &StructureTable,
    range: OctaveRange,
    scheme: WeightScheme,
) -> Result<Vec<ZetaEstimate>> {
    table
        .q
        .iter()
        .enumerate()
        .map(|(qi, &q)| {
            let fit = fit_log2_row(table.row(qi), &table.n_j, table.octave_start, range, scheme)?;
            Ok(ZetaEstimate {
                q,
                zeta: fit.slope,
                stderr: fit.slope_stderr,
            })
        })
        .collect()
}

/// Log-cumulants `c_m = log2(e) · slope of C(m, ·)`.
pub fn estimate_log_cumulants(
    table: &CumulantTable,
    range: OctaveRange,
    scheme: WeightScheme,
) -> Result<Vec<CumulantEstimate>> {
    (1..=table.m_max)
        .map(|m| {
            let fit = fit_octaves(table.order(m), &table.n_j, table.octave_start, range, scheme)?;
            Ok(CumulantEstimate {
                m,
                value: fit.slope * std::f64::consts::LOG2_E,
                stderr: fit.slope_stderr * std::f64::consts::LOG2_E,
            })
        })
        .collect()
}

/// Coefficient-moment exponents `η(p)` over a grid of positive orders.
pub fn estimate_eta(
    pyramid: &WaveletPyramid,
    p_grid: &[f64],
    range: OctaveRange,
    scheme: WeightScheme,
) -> Result<Vec<EtaEstimate>> {
    if p_grid.is_empty() {
        return Err(Error::invalid("empty p grid"));
    }
    if let Some(&bad) = p_grid.iter().find(|&&p| !(p > 0.0) || !p.is_finite()) {
        return Err(Error::invalid(format!(
            "η(p) requires finite positive p; got {bad}"
        )));
    }
    let table = sf_coefficients(pyramid, p_grid)?;
    let mut out = Vec::with_capacity(p_grid.len());
    for (pi, &p) in p_grid.iter().enumerate() {
        let fit = fit_log2_row(table.row(pi), &table.n_j, table.octave_start, range, scheme)?;
        out.push(EtaEstimate {
            p,
            eta: fit.slope,
            stderr: fit.slope_stderr,
        });
    }
    Ok(out)
}

fn fit_log2_row(
    row: &[f64],
    n_j: &[usize],
    octave_start: usize,
    range: OctaveRange,
    scheme: WeightScheme,
) -> Result<FitLine> {
    let logs: Vec<f64> = row
        .iter()
        .map(|&s| if s > 0.0 { s.log2() } else { f64::NAN })
        .collect();
    fit_octaves(&logs, n_j, octave_start, range, scheme)
}

/// Locates `p₀` on the piecewise-linear interpolant of the `η̂` samples.
///
/// Samples are sorted by `p`; the first sign change brackets the root, which
/// is bisected down to [`P0_TOLERANCE`].
pub fn estimate_p0(samples: &[EtaEstimate]) -> Result<P0Estimate> {
    if samples.len() < 2 {
        return Err(Error::invalid("p₀ estimation needs at least two η samples"));
    }
    let mut s: Vec<(f64, f64)> = samples.iter().map(|e| (e.p, e.eta)).collect();
    s.sort_by(|a, b| a.0.total_cmp(&b.0));
    if s.windows(2).any(|w| w[0].0 == w[1].0) {
        return Err(Error::invalid("duplicate p values in η samples"));
    }
    if let Some(&(p, eta)) = s.iter().find(|(_, eta)| !eta.is_finite()) {
        return Err(Error::invalid(format!("non-finite η({p}) = {eta}")));
    }
    if s[0].1 <= 0.0 {
        return Ok(P0Estimate::BelowGrid { p_min: s[0].0 });
    }
    let cross = s.windows(2).position(|w| w[1].1 <= 0.0);
    let Some(i) = cross else {
        return Ok(P0Estimate::AboveGrid {
            p_max: s[s.len() - 1].0,
        });
    };
    let (p_lo, eta_lo) = s[i];
    let (p_hi, eta_hi) = s[i + 1];
    let interp = |x: f64| eta_lo + (eta_hi - eta_lo) * (x - p_lo) / (p_hi - p_lo);
    let (mut a, mut b) = (p_lo, p_hi);
    while b - a > P0_TOLERANCE {
        let mid = 0.5 * (a + b);
        if interp(mid) > 0.0 {
            a = mid;
        } else {
            b = mid;
        }
    }
    Ok(P0Estimate::Finite(0.5 * (a + b)))
}
