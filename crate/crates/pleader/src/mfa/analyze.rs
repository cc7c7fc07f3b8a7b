//! End-to-end multifractal analysis of a wavelet pyramid.
//!
//! [`analyze`] wires the pieces together: p-leaders, structure functions and
//! log-cumulants, the finite-resolution correction driven by a measured
//! `η̂(p)`, scaling fits over a chosen octave range, the critical exponent
//! `p₀`, and the Legendre spectrum. It is the entry point shared by the
//! command-line tools and the benchmark harness.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::wavelet::WaveletPyramid;

use super::correction::{correct_cumulants, correct_structure};
use super::cumulants::{cumulants, CumulantTable};
use super::leaders::{compute_pleaders, LeaderMode};
use super::legendre::{legendre_spectrum, LegendreSpectrum};
use super::regression::{OctaveRange, WeightScheme};
use super::scaling::{
    default_p_grid, estimate_eta, estimate_log_cumulants, estimate_p0, estimate_zeta,
    CumulantEstimate, EtaEstimate, P0Estimate, ZetaEstimate,
};
use super::structure::{sf_coefficients, sf_leaders, StructureTable};

/// Coarsest octave kept by the default fit range must still hold this many
/// samples.
pub const DEFAULT_MIN_SAMPLES: usize = 8;

/// Configuration of a full analysis run.
#[derive(Debug, Clone)]
pub struct AnalysisConfig {
    /// Aggregation exponents to analyze; finite positive or `f64::INFINITY`.
    pub p_values: Vec<f64>,
    /// Moment orders for structure functions and the spectrum.
    pub q_grid: Vec<f64>,
    /// Highest log-cumulant order (1..=3).
    pub m_max: usize,
    pub mode: LeaderMode,
    pub weights: WeightScheme,
    /// Octave range for scaling fits; `None` picks `[3, j_max]` clamped to
    /// octaves holding at least [`DEFAULT_MIN_SAMPLES`] samples.
    pub octave_range: Option<OctaveRange>,
    /// Octave range for `η̂(p)` fits; `None` picks `[3, J−2]` clamped.
    pub eta_range: Option<OctaveRange>,
    /// Apply the finite-resolution correction using measured `η̂(p)`.
    pub apply_correction: bool,
    /// Grid for `p₀` estimation; empty skips it.
    pub p0_grid: Vec<f64>,
    pub compute_legendre: bool,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            p_values: vec![2.0],
            q_grid: (-20..=20).map(|k| k as f64 * 0.25).collect(),
            m_max: 3,
            mode: LeaderMode::Restricted,
            weights: WeightScheme::default(),
            octave_range: None,
            eta_range: None,
            apply_correction: true,
            p0_grid: default_p_grid(),
            compute_legendre: true,
        }
    }
}

/// Analysis results for one aggregation exponent.
#[derive(Debug, Clone, Serialize)]
pub struct PAnalysis {
    pub p: f64,
    /// Measured `η̂(p)` driving the correction (`None` for `p = ∞`).
    pub eta_p: Option<f64>,
    pub structure: StructureTable,
    pub structure_corrected: Option<StructureTable>,
    pub cumulants: CumulantTable,
    pub cumulants_corrected: Option<CumulantTable>,
    /// Scaling exponents from the corrected tables when available, otherwise
    /// from the raw ones.
    pub zeta: Vec<ZetaEstimate>,
    pub zeta_raw: Vec<ZetaEstimate>,
    pub log_cumulants: Vec<CumulantEstimate>,
    pub log_cumulants_raw: Vec<CumulantEstimate>,
    pub legendre: Option<LegendreSpectrum>,
    pub warnings: Vec<String>,
}

/// Full analysis output.
#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub n_octaves: usize,
    pub octave_range: OctaveRange,
    pub eta_range: OctaveRange,
    /// `η̂` samples over the `p₀` grid (empty when skipped).
    pub eta_samples: Vec<EtaEstimate>,
    pub p0: Option<P0Estimate>,
    pub per_p: Vec<PAnalysis>,
    pub warnings: Vec<String>,
}

/// Runs the full analysis pipeline on a pyramid.
pub fn analyze(pyramid: &WaveletPyramid, config: &AnalysisConfig) -> Result<AnalysisReport> {
    let j_max = pyramid.n_octaves();
    if j_max < 2 {
        return Err(Error::invalid(format!(
            "analysis needs at least two octaves; pyramid has {j_max}"
        )));
    }
    if config.p_values.is_empty() {
        return Err(Error::invalid("no aggregation exponents requested"));
    }
    for &p in &config.p_values {
        if !(p > 0.0) {
            return Err(Error::invalid(format!("invalid aggregation exponent {p}")));
        }
    }
    let mut warnings = Vec::new();
    let octave_range = resolve_fit_range(pyramid, config.octave_range, &mut warnings)?;
    let eta_range = resolve_eta_range(j_max, config.eta_range, &mut warnings)?;

    let (eta_samples, p0) = if config.p0_grid.is_empty() {
        (Vec::new(), None)
    } else {
        let samples = estimate_eta(pyramid, &config.p0_grid, eta_range, config.weights)?;
        let p0 = estimate_p0(&samples)?;
        (samples, Some(p0))
    };

    let mut per_p = Vec::with_capacity(config.p_values.len());
    for &p in &config.p_values {
        per_p.push(analyze_one_p(
            pyramid,
            p,
            config,
            octave_range,
            eta_range,
            p0.as_ref(),
        )?);
    }

    Ok(AnalysisReport {
        n_octaves: j_max,
        octave_range,
        eta_range,
        eta_samples,
        p0,
        per_p,
        warnings,
    })
}

fn analyze_one_p(
    pyramid: &WaveletPyramid,
    p: f64,
    config: &AnalysisConfig,
    octave_range: OctaveRange,
    eta_range: OctaveRange,
    p0: Option<&P0Estimate>,
) -> Result<PAnalysis> {
    let mut warnings = Vec::new();
    let field = compute_pleaders(pyramid, p, config.mode)?;
    let structure = sf_leaders(&field, &config.q_grid)?;
    let cumulant_table = cumulants(&field, config.m_max)?;

    let eta_p = if p.is_finite() {
        let table = sf_coefficients(pyramid, &[p])?;
        let fits = estimate_zeta(&table, eta_range, config.weights)?;
        Some(fits[0].zeta)
    } else {
        None
    };
    if let Some(eta) = eta_p {
        if eta <= 0.0 {
            warnings.push(format!(
                "measured η({p}) = {eta:.4} is not positive; p-leader moments may \
                 diverge and the finite-resolution correction is unreliable"
            ));
        }
    }
    if let (Some(P0Estimate::Finite(p0)), true) = (p0, p.is_finite()) {
        if p >= *p0 {
            warnings.push(format!(
                "p = {p} is at or above the estimated critical exponent p0 = {p0:.3}"
            ));
        }
    }

    let (structure_corrected, cumulants_corrected) = if config.apply_correction {
        let eta = eta_p.unwrap_or(0.0);
        (
            Some(correct_structure(&structure, eta)?),
            Some(correct_cumulants(&cumulant_table, eta)?),
        )
    } else {
        (None, None)
    };

    let zeta_raw = estimate_zeta(&structure, octave_range, config.weights)?;
    let zeta = match &structure_corrected {
        Some(t) => estimate_zeta(t, octave_range, config.weights)?,
        None => zeta_raw.clone(),
    };
    let log_cumulants_raw = estimate_log_cumulants(&cumulant_table, octave_range, config.weights)?;
    let log_cumulants = match &cumulants_corrected {
        Some(t) => estimate_log_cumulants(t, octave_range, config.weights)?,
        None => log_cumulants_raw.clone(),
    };

    let legendre = if config.compute_legendre && config.q_grid.len() >= 2 {
        let qs: Vec<f64> = zeta.iter().map(|z| z.q).collect();
        let zs: Vec<f64> = zeta.iter().map(|z| z.zeta).collect();
        let spec = legendre_spectrum(&qs, &zs, pyramid.dimension)?;
        if !spec.concave {
            warnings.push(format!(
                "fitted ζ(q) is not concave at p = {p}; the Legendre spectrum \
                 is a formal envelope"
            ));
        }
        Some(spec)
    } else {
        None
    };

    Ok(PAnalysis {
        p,
        eta_p,
        structure,
        structure_corrected,
        cumulants: cumulant_table,
        cumulants_corrected,
        zeta,
        zeta_raw,
        log_cumulants,
        log_cumulants_raw,
        legendre,
        warnings,
    })
}

fn resolve_fit_range(
    pyramid: &WaveletPyramid,
    requested: Option<OctaveRange>,
    warnings: &mut Vec<String>,
) -> Result<OctaveRange> {
    let j_max = pyramid.n_octaves();
    match requested {
        Some(r) => {
            if r.j2 > j_max {
                warnings.push(format!(
                    "octave range clamped from [{}, {}] to [{}, {}]",
                    r.j1,
                    r.j2,
                    r.j1,
                    j_max
                ));
                OctaveRange::new(r.j1.min(j_max.saturating_sub(1).max(1)), j_max)
            } else {
                Ok(r)
            }
        }
        None => {
            let mut j2 = 0;
            for j in 1..=j_max {
                if pyramid.retained_positions(j) >= DEFAULT_MIN_SAMPLES {
                    j2 = j;
                }
            }
            // Tiny pyramids: fall back to the first two octaves (j_max >= 2
            // was checked by the caller).
            j2 = j2.max(2);
            let j1 = j2.saturating_sub(2).clamp(1, 3);
            OctaveRange::new(j1, j2)
        }
    }
}

fn resolve_eta_range(
    j_max: usize,
    requested: Option<OctaveRange>,
    warnings: &mut Vec<String>,
) -> Result<OctaveRange> {
    match requested {
        Some(r) => {
            if r.j2 > j_max {
                warnings.push(format!(
                    "η fit range clamped from [{}, {}] to [{}, {}]",
                    r.j1,
                    r.j2,
                    r.j1,
                    j_max
                ));
                OctaveRange::new(r.j1.min(j_max.saturating_sub(1).max(1)), j_max)
            } else {
                Ok(r)
            }
        }
        None => {
            let j2 = j_max.saturating_sub(2).max(2);
            let j1 = j2.saturating_sub(2).clamp(1, 3);
            OctaveRange::new(j1, j2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wavelet::{ArrayData, Boundary, OctaveDetail};

    /// Pyramid with |c| = 2^{j h} at octave j; an exact monofractal.
    fn monofractal(h: f64, octaves: usize, finest_len: usize) -> WaveletPyramid {
        let mut det = Vec::new();
        let mut n = finest_len;
        for j in 1..=octaves {
            det.push(OctaveDetail {
                subbands: vec![ArrayData::One(vec![2.0_f64.powf(j as f64 * h); n])],
            });
            n /= 2;
        }
        WaveletPyramid {
            dimension: 1,
            vanishing_moments: 2,
            boundary: Boundary::Periodic,
            discard_border: 0,
            octaves: det,
            approx: None,
        }
    }

    #[test]
    fn monofractal_pipeline_recovers_h_exactly() {
        // Constant coefficients per octave: the p-leader is a deterministic
        // multiple of 2^{j h} whose γ factor the correction removes exactly,
        // so corrected ζ(q) = q h and c1 = h, c2 = c3 = 0 to close to
        // machine precision.
        let h = 0.7;
        let pyr = monofractal(h, 10, 1 << 10);
        let config = AnalysisConfig {
            p_values: vec![2.0],
            q_grid: vec![-2.0, -1.0, 0.0, 1.0, 2.0],
            p0_grid: vec![1.0, 2.0, 4.0],
            ..AnalysisConfig::default()
        };
        let report = analyze(&pyr, &config).unwrap();
        // Octave 8 still holds 1024/2^7 = 8 positions, so the default range
        // runs [3, 8].
        assert_eq!(report.octave_range, OctaveRange { j1: 3, j2: 8 });
        let pa = &report.per_p[0];
        // η(p) = p h exactly on this pyramid.
        assert!((pa.eta_p.unwrap() - 2.0 * h).abs() < 1e-10);
        for z in &pa.zeta {
            assert!(
                (z.zeta - z.q * h).abs() < 1e-8,
                "corrected ζ({}) = {}",
                z.q,
                z.zeta
            );
        }
        let c = &pa.log_cumulants;
        assert!((c[0].value - h).abs() < 1e-8);
        assert!(c[1].value.abs() < 1e-10);
        assert!(c[2].value.abs() < 1e-10);
        // The uncorrected first cumulant carries the extra +ln γ(j)/p term,
        // which still grows over the fit range and biases its slope high.
        assert!(pa.log_cumulants_raw[0].value > c[0].value + 1e-4);
        let spec = pa.legendre.as_ref().unwrap();
        assert!((spec.points[0].h - h).abs() < 1e-7);
        assert!((spec.points[0].value - 1.0).abs() < 1e-7);
        assert!(matches!(report.p0, Some(P0Estimate::AboveGrid { .. })));
    }

    #[test]
    fn infinite_p_skips_eta_and_correction_bits() {
        let pyr = monofractal(0.5, 8, 1 << 8);
        let config = AnalysisConfig {
            p_values: vec![f64::INFINITY],
            q_grid: vec![0.0, 1.0, 2.0],
            p0_grid: Vec::new(),
            ..AnalysisConfig::default()
        };
        let report = analyze(&pyr, &config).unwrap();
        let pa = &report.per_p[0];
        assert!(pa.eta_p.is_none());
        assert!(report.p0.is_none());
        // Correction is the identity at p = ∞: fits agree bit-for-bit.
        for (a, b) in pa.zeta.iter().zip(&pa.zeta_raw) {
            assert_eq!(a.zeta, b.zeta);
        }
    }

    #[test]
    fn out_of_range_requests_are_clamped_with_warning() {
        let pyr = monofractal(0.5, 6, 1 << 6);
        let config = AnalysisConfig {
            p_values: vec![1.0],
            q_grid: vec![0.0, 1.0],
            octave_range: Some(OctaveRange { j1: 2, j2: 40 }),
            p0_grid: Vec::new(),
            compute_legendre: false,
            ..AnalysisConfig::default()
        };
        let report = analyze(&pyr, &config).unwrap();
        assert_eq!(report.octave_range, OctaveRange { j1: 2, j2: 6 });
        assert!(!report.warnings.is_empty());
    }

    #[test]
    fn rejects_empty_and_invalid_p() {
        let pyr = monofractal(0.5, 4, 1 << 4);
        let bad = AnalysisConfig {
            p_values: vec![],
            ..AnalysisConfig::default()
        };
        assert!(analyze(&pyr, &bad).is_err());
        let neg = AnalysisConfig {
            p_values: vec![-2.0],
            ..AnalysisConfig::default()
        };
        assert!(analyze(&pyr, &neg).is_err());
    }
}
