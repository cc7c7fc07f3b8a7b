//! Exact synthesis of stationary Gaussian sequences by circulant embedding,
//! and the self-similar / multifractal processes built on top of it.

use rand::Rng;
use rand_distr::StandardNormal;
use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use crate::error::{Error, Result};

/// Attempt cap for the embedding circle: the initial size is doubled at most
/// this many times before giving up.
const EMBED_ATTEMPTS: usize = 3;
/// Eigenvalues above `-RELATIVE_EIG_TOL · λ_max` are treated as rounding
/// noise and clamped to zero.
const RELATIVE_EIG_TOL: f64 = 1e-9;

fn check_len(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::invalid(format!(
            "stationary synthesis needs at least 2 samples, got {n}"
        )));
    }
    Ok(())
}

/// Draws `n` samples of a zero-mean stationary Gaussian sequence whose
/// autocovariance at lag `k` is `acov(k)`.
///
/// The sequence is embedded in a circulant of length `L ≥ 2n` (a power of
/// two) whose eigenvalues are the DFT of the wrapped autocovariance; the
/// circle is doubled up to two more times if negative eigenvalues appear,
/// after which [`Error::EmbeddingNotPsd`] is returned. Exactly `L / 2 + 1`
/// standard normal pairs are consumed in index order, so results are
/// reproducible for a seeded generator.
pub fn gaussian_from_autocov<R, F>(n: usize, acov: F, rng: &mut R) -> Result<Vec<f64>>
where
    R: Rng + ?Sized,
    F: Fn(usize) -> f64,
{
    check_len(n)?;
    let mut size = (2 * n).next_power_of_two();
    let mut worst = f64::INFINITY;
    for attempt in 0..EMBED_ATTEMPTS {
        let half = size / 2;
        let mut row: Vec<Complex<f64>> = (0..size)
            .map(|k| Complex::new(acov(k.min(size - k)), 0.0))
            .collect();
        let mut planner = FftPlanner::new();
        planner.plan_fft_forward(size).process(&mut row);
        let eigs: Vec<f64> = row.iter().map(|c| c.re).collect();
        let max_eig = eigs.iter().cloned().fold(0.0_f64, f64::max);
        let min_eig = eigs.iter().cloned().fold(f64::INFINITY, f64::min);
        worst = worst.min(min_eig);
        if min_eig < -RELATIVE_EIG_TOL * max_eig {
            if attempt + 1 == EMBED_ATTEMPTS {
                break;
            }
            size *= 2;
            continue;
        }
        // Hermitian spectral samples: z_k ~ CN(0, λ_k), z_{L−k} = conj(z_k).
        let mut spectrum = vec![Complex::new(0.0, 0.0); size];
        let scale = |lambda: f64| lambda.max(0.0).sqrt();
        let draw = |rng: &mut R| -> f64 { rng.sample(StandardNormal) };
        spectrum[0] = Complex::new(scale(eigs[0]) * draw(rng), 0.0);
        spectrum[half] = Complex::new(scale(eigs[half]) * draw(rng), 0.0);
        for k in 1..half {
            let sd = scale(eigs[k]) / 2.0_f64.sqrt();
            let z = Complex::new(sd * draw(rng), sd * draw(rng));
            spectrum[k] = z;
            spectrum[size - k] = z.conj();
        }
        planner.plan_fft_inverse(size).process(&mut spectrum);
        let norm = 1.0 / (size as f64).sqrt();
        return Ok(spectrum[..n].iter().map(|c| c.re * norm).collect());
    }
    Err(Error::EmbeddingNotPsd {
        max_size: size,
        min_eigenvalue: worst,
    })
}

/// Autocovariance of unit-variance fractional Gaussian noise at lag `k`.
pub fn fgn_autocov(hurst: f64, k: usize) -> f64 {
    let k = k as f64;
    let two_h = 2.0 * hurst;
    0.5 * ((k + 1.0).powf(two_h) - 2.0 * k.powf(two_h) + (k - 1.0).abs().powf(two_h))
}

fn check_hurst(hurst: f64) -> Result<()> {
    if !(hurst > 0.0 && hurst < 1.0) {
        return Err(Error::invalid(format!(
            "Hurst exponent must lie in (0, 1), got {hurst}"
        )));
    }
    Ok(())
}

/// Draws `n` samples of unit-variance fractional Gaussian noise.
pub fn synth_fgn<R: Rng + ?Sized>(n: usize, hurst: f64, rng: &mut R) -> Result<Vec<f64>> {
    check_hurst(hurst)?;
    gaussian_from_autocov(n, |k| fgn_autocov(hurst, k), rng)
}

/// Draws one path of fractional Brownian motion (cumulative sum of
/// fractional Gaussian noise), `n` samples starting at the first increment.
pub fn synth_fbm<R: Rng + ?Sized>(n: usize, hurst: f64, rng: &mut R) -> Result<Vec<f64>> {
    let mut path = synth_fgn(n, hurst, rng)?;
    let mut acc = 0.0;
    for v in &mut path {
        acc += *v;
        *v = acc;
    }
    Ok(path)
}

/// Draws one path of a multifractal random walk: increments are independent
/// fractional Gaussian noise times `exp(ω)`, where `ω` is a zero-mean
/// Gaussian sequence with logarithmic covariance
/// `Cov(ω_i, ω_j) = λ² max(ln(n / (|i−j| + 1)), 0)`.
///
/// The amplitude is left unnormalized (no mean shift in `ω`): constant
/// factors move structure-function intercepts, never their slopes.
pub fn synth_mrw<R: Rng + ?Sized>(
    n: usize,
    hurst: f64,
    lambda: f64,
    rng: &mut R,
) -> Result<Vec<f64>> {
    check_hurst(hurst)?;
    if !(lambda >= 0.0) || !lambda.is_finite() {
        return Err(Error::invalid(format!(
            "intermittency coefficient must be finite and non-negative, got {lambda}"
        )));
    }
    let gauss = synth_fgn(n, hurst, rng)?;
    let l2 = lambda * lambda;
    let nf = n as f64;
    let omega = gaussian_from_autocov(n, |k| l2 * (nf / (k as f64 + 1.0)).ln().max(0.0), rng)?;
    let mut acc = 0.0;
    let path = gauss
        .iter()
        .zip(&omega)
        .map(|(&g, &w)| {
            acc += g * w.exp();
            acc
        })
        .collect();
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn mean_autocov<F: Fn(&mut ChaCha8Rng) -> Vec<f64>>(
        synth: F,
        n: usize,
        n_mc: usize,
        max_lag: usize,
    ) -> Vec<f64> {
        let mut acc = vec![0.0; max_lag + 1];
        for i in 0..n_mc {
            let mut rng = ChaCha8Rng::seed_from_u64(5000 + i as u64);
            let x = synth(&mut rng);
            for (k, slot) in acc.iter_mut().enumerate() {
                let dot: f64 = x[..n - k].iter().zip(&x[k..]).map(|(a, b)| a * b).sum();
                *slot += dot / (n - k) as f64 / n_mc as f64;
            }
        }
        acc
    }

    #[test]
    fn fgn_autocovariance_matches_target() {
        let (n, n_mc) = (4096, 50);
        for hurst in [0.3, 0.7] {
            let est = mean_autocov(|rng| synth_fgn(n, hurst, rng).unwrap(), n, n_mc, 10);
            for (k, &e) in est.iter().enumerate() {
                let want = fgn_autocov(hurst, k);
                assert!(
                    (e - want).abs() < 0.03,
                    "H={hurst} lag {k}: {e} vs {want}"
                );
            }
        }
    }

    #[test]
    fn half_hurst_is_white_noise() {
        let (n, n_mc) = (4096, 50);
        let est = mean_autocov(|rng| synth_fgn(n, 0.5, rng).unwrap(), n, n_mc, 10);
        assert!((est[0] - 1.0).abs() < 0.02);
        for &e in &est[1..] {
            assert!(e.abs() < 0.02);
        }
        // The lag-k target itself is exactly zero at H = 1/2.
        for k in 1..=10 {
            assert!(fgn_autocov(0.5, k).abs() < 1e-12);
        }
    }

    #[test]
    fn fbm_is_cumulative_and_deterministic() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let path = synth_fbm(512, 0.7, &mut rng).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let incr = synth_fgn(512, 0.7, &mut rng).unwrap();
        let mut acc = 0.0;
        for (b, g) in path.iter().zip(&incr) {
            acc += g;
            assert!((b - acc).abs() < 1e-12);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        assert_eq!(path, synth_fbm(512, 0.7, &mut rng).unwrap());
    }

    #[test]
    fn mrw_reduces_to_fbm_without_intermittency() {
        // λ = 0 forces ω ≡ 0, so the walk is plain fractional Brownian
        // motion driven by the same noise draws.
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let walk = synth_mrw(256, 0.7, 0.0, &mut rng).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let fbm = synth_fbm(256, 0.7, &mut rng).unwrap();
        for (w, b) in walk.iter().zip(&fbm) {
            assert!((w - b).abs() < 1e-12);
        }
    }

    #[test]
    fn mrw_is_finite_and_seed_deterministic() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let a = synth_mrw(2048, 0.84, 0.08_f64.sqrt(), &mut rng).unwrap();
        assert_eq!(a.len(), 2048);
        assert!(a.iter().all(|v| v.is_finite()));
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        assert_eq!(a, synth_mrw(2048, 0.84, 0.08_f64.sqrt(), &mut rng).unwrap());
        assert!(synth_mrw(128, 1.2, 0.1, &mut rng).is_err());
        assert!(synth_mrw(128, 0.7, -0.1, &mut rng).is_err());
        assert!(synth_mrw(128, 0.7, f64::NAN, &mut rng).is_err());
    }

    #[test]
    fn impossible_covariance_reports_embedding_failure() {
        // Off-diagonal 1.2 with unit diagonal is not a covariance; every
        // circulant eigenvalue at nonzero frequency equals -0.2.
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let err = gaussian_from_autocov(64, |k| if k == 0 { 1.0 } else { 1.2 }, &mut rng)
            .unwrap_err();
        match err {
            Error::EmbeddingNotPsd {
                max_size,
                min_eigenvalue,
            } => {
                assert_eq!(max_size, 512);
                assert!((min_eigenvalue + 0.2).abs() < 1e-9);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn white_noise_moments_are_gaussian() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let x = synth_fgn(1 << 16, 0.5, &mut rng).unwrap();
        let n = x.len() as f64;
        let mean = x.iter().sum::<f64>() / n;
        let var = x.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
        let kurt = x.iter().map(|v| (v - mean).powi(4)).sum::<f64>() / n / (var * var);
        assert!(mean.abs() < 0.02);
        assert!((var - 1.0).abs() < 0.02);
        assert!((kurt - 3.0).abs() < 0.1);
    }
}
