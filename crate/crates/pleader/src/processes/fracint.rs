//! Fractional integration in the Fourier domain.

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use crate::error::{Error, Result};

/// Applies the periodic fractional integration of order `s` to a signal:
/// every Fourier bin is scaled by `|ω|^{−s}` with `ω = 2π k̃ / n` for the
/// aliased frequency `k̃ = min(k, n − k)`, and the mean (DC bin) is left
/// untouched. Positive `s` smooths, negative `s` roughens, and the scaling
/// exponent of a process shifts by `s·p` at moment order `p`. Orders `s` and
/// `−s` are exact inverses of each other.
pub fn fractional_integrate(signal: &[f64], s: f64) -> Result<Vec<f64>> {
    if signal.len() < 2 {
        return Err(Error::invalid(format!(
            "fractional integration needs at least 2 samples, got {}",
            signal.len()
        )));
    }
    if !s.is_finite() {
        return Err(Error::invalid(format!(
            "integration order must be finite, got {s}"
        )));
    }
    if let Some(idx) = signal.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite {
            context: "fractional integration input".into(),
            index: idx,
        });
    }
    let n = signal.len();
    let mut buf: Vec<Complex<f64>> = signal.iter().map(|&v| Complex::new(v, 0.0)).collect();
    let mut planner = FftPlanner::new();
    planner.plan_fft_forward(n).process(&mut buf);
    for (k, c) in buf.iter_mut().enumerate().skip(1) {
        let aliased = k.min(n - k) as f64;
        let omega = 2.0 * std::f64::consts::PI * aliased / n as f64;
        *c *= omega.powf(-s);
    }
    planner.plan_fft_inverse(n).process(&mut buf);
    let norm = 1.0 / n as f64;
    Ok(buf.into_iter().map(|c| c.re * norm).collect())
}
