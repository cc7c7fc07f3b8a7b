//! Legendre transform of the scaling exponents.
//!
//! The multifractal spectrum estimate is the concave conjugate
//! `L(h) = min_q (d + q h − ζ(q))` taken over the fitted moment grid. For a
//! concave `ζ` the minimum at `h = ζ'(q)` is attained at the tangent moment
//! order, so evaluating `L` on the grid of inter-point slopes of `ζ` traces
//! the spectrum without any smoothing. A non-concave `ζ` grid (estimation
//! noise, too-narrow fit ranges) is reported via the `concave` flag so
//! callers can warn instead of silently clipping.

use serde::Serialize;

use crate::error::{Error, Result};

/// One point of the estimated spectrum.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SpectrumPoint {
    pub h: f64,
    /// `L(h) = min_q (d + q h − ζ(q))`.
    pub value: f64,
}

/// Legendre spectrum evaluated on the slope grid of `ζ`.
#[derive(Debug, Clone, Serialize)]
pub struct LegendreSpectrum {
    /// Points ordered by increasing `h`.
    pub points: Vec<SpectrumPoint>,
    /// Grid point with the smallest spectrum value.
    pub infimum: SpectrumPoint,
    /// Whether the `ζ` grid was concave (slopes non-increasing in `q`).
    pub concave: bool,
}

/// Evaluates `L(h) = min_q (d + q h − ζ(q))` at a single regularity `h`.
pub fn legendre_at(q: &[f64], zeta: &[f64], dimension: u8, h: f64) -> Result<f64> {
    validate(q, zeta)?;
    let d = dimension as f64;
    Ok(q.iter()
        .zip(zeta)
        .map(|(&qq, &z)| d + qq * h - z)
        .fold(f64::INFINITY, f64::min))
}

/// Evaluates the spectrum on the slope grid of the fitted `ζ` values.
pub fn legendre_spectrum(q: &[f64], zeta: &[f64], dimension: u8) -> Result<LegendreSpectrum> {
    validate(q, zeta)?;
    if q.len() < 2 {
        return Err(Error::invalid("spectrum needs at least two moment orders"));
    }
    let mut order: Vec<usize> = (0..q.len()).collect();
    order.sort_by(|&a, &b| q[a].total_cmp(&q[b]));
    if order.windows(2).any(|w| q[w[0]] == q[w[1]]) {
        return Err(Error::invalid("duplicate moment orders"));
    }
    let qs: Vec<f64> = order.iter().map(|&i| q[i]).collect();
    let zs: Vec<f64> = order.iter().map(|&i| zeta[i]).collect();

    let slopes: Vec<f64> = qs
        .windows(2)
        .zip(zs.windows(2))
        .map(|(qw, zw)| (zw[1] - zw[0]) / (qw[1] - qw[0]))
        .collect();
    let scale = zs.iter().fold(1.0_f64, |m, z| m.max(z.abs()));
    let tol = 1e-9 * scale;
    let concave = slopes.windows(2).all(|w| w[1] <= w[0] + tol);

    let mut hs: Vec<f64> = slopes;
    hs.sort_by(f64::total_cmp);
    hs.dedup_by(|a, b| (*a - *b).abs() <= tol);

    let points: Vec<SpectrumPoint> = hs
        .into_iter()
        .map(|h| {
            let value = legendre_at(&qs, &zs, dimension, h).expect("validated inputs");
            SpectrumPoint { h, value }
        })
        .collect();
    let infimum = points
        .iter()
        .copied()
        .min_by(|a, b| a.value.total_cmp(&b.value))
        .expect("at least one slope point");
    Ok(LegendreSpectrum {
        points,
        infimum,
        concave,
    })
}

fn validate(q: &[f64], zeta: &[f64]) -> Result<()> {
    if q.is_empty() || q.len() != zeta.len() {
        return Err(Error::invalid(format!(
            "moment grid ({}) and ζ values ({}) must align and be non-empty",
            q.len(),
            zeta.len()
        )));
    }
    if q.iter().chain(zeta).any(|v| !v.is_finite()) {
        return Err(Error::invalid("non-finite ζ grid"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_zeta_collapses_to_a_single_point() {
        let q: Vec<f64> = (-4..=4).map(|k| k as f64 * 0.5).collect();
        let zeta: Vec<f64> = q.iter().map(|&qq| 0.72 * qq).collect();
        let spec = legendre_spectrum(&q, &zeta, 1).unwrap();
        assert_eq!(spec.points.len(), 1);
        assert!((spec.points[0].h - 0.72).abs() < 1e-12);
        assert!((spec.points[0].value - 1.0).abs() < 1e-12);
        assert!(spec.concave);
    }

    #[test]
    fn parabolic_zeta_yields_parabolic_spectrum_at_tangent_points() {
        // ζ(q) = c1 q + c2 q²/2 with c1 = 0.8, c2 = −0.08 in dimension 1.
        // Each chord slope equals the tangent slope at the midpoint of its
        // moment pair, and for a quadratic the discrete minimum over the grid
        // then sits exactly (−c2/2)(Δ/2)² above the continuous parabola
        // 1 + (h − c1)²/(2 c2), here 0.04·0.125² = 6.25e−4.
        let (c1, c2) = (0.8, -0.08);
        let step = 0.25;
        let q: Vec<f64> = (-20..=20).map(|k| k as f64 * step).collect();
        let zeta: Vec<f64> = q.iter().map(|&qq| c1 * qq + 0.5 * c2 * qq * qq).collect();
        let spec = legendre_spectrum(&q, &zeta, 1).unwrap();
        assert!(spec.concave);
        assert_eq!(spec.points.len(), q.len() - 1);
        let offset = -c2 / 2.0 * (step / 2.0) * (step / 2.0);
        for pt in &spec.points {
            let direct = legendre_at(&q, &zeta, 1, pt.h).unwrap();
            assert!((pt.value - direct).abs() < 1e-12);
            let truth = 1.0 + (pt.h - c1) * (pt.h - c1) / (2.0 * c2);
            assert!(
                (pt.value - (truth + offset)).abs() < 1e-12,
                "h = {}: {} vs {}",
                pt.h,
                pt.value,
                truth + offset
            );
        }
    }

    #[test]
    fn specific_regularities_hit_exact_values() {
        // On the quarter-step grid the transform at h = c1 = 0.8 picks the
        // q = 0 term exactly: L = d. At h = 0.4 the tangent moment is
        // q = (h−c1)/c2 = 5, a grid point, so L = 1 + 5·0.4 − ζ(5) = 0.
        let (c1, c2) = (0.8, -0.08);
        let q: Vec<f64> = (-20..=20).map(|k| k as f64 * 0.25).collect();
        let zeta: Vec<f64> = q.iter().map(|&qq| c1 * qq + 0.5 * c2 * qq * qq).collect();
        let at_mode = legendre_at(&q, &zeta, 1, 0.8).unwrap();
        assert!((at_mode - 1.0).abs() < 1e-12);
        let at_tail = legendre_at(&q, &zeta, 1, 0.4).unwrap();
        assert!(at_tail.abs() < 1e-12);
    }

    #[test]
    fn non_concave_grids_are_flagged() {
        let q = vec![0.0, 1.0, 2.0];
        let zeta = vec![0.0, 0.2, 0.9]; // slopes 0.2 then 0.7: convex
        let spec = legendre_spectrum(&q, &zeta, 1).unwrap();
        assert!(!spec.concave);
    }

    #[test]
    fn mismatched_grids_are_rejected() {
        assert!(legendre_spectrum(&[0.0, 1.0], &[0.0], 1).is_err());
        assert!(legendre_at(&[], &[], 1, 0.5).is_err());
        assert!(legendre_spectrum(&[0.0, 0.0], &[0.0, 0.1], 1).is_err());
    }
}
