//! Multiplier laws for random wavelet cascades.
//!
//! A cascade coefficient at tree level `l` is a product of `l` multipliers
//! `W > 0`. The moment function `E[W^q]` determines every closed-form oracle
//! through the exponent `η(q) = −log2 E[W^q]`, which for the log-normal law
//! parametrized by target log-cumulants `(c1, c2)` is the parabola
//! `η(q) = c1·q + c2·q²/2`.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Law of a single cascade multiplier.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum MultiplierLaw {
    /// Every multiplier equals `w`; degenerates a random cascade into an
    /// equal-weight deterministic one.
    Deterministic { w: f64 },
    /// `ln W ~ N(mu, sigma2)`.
    LogNormal { mu: f64, sigma2: f64 },
    /// `W = w0` or `w1` with probability 1/2 each.
    TwoPoint { w0: f64, w1: f64 },
}

impl MultiplierLaw {
    /// Log-normal law with target log-cumulants: `c1` positive regularity,
    /// `c2 ≤ 0` multifractality. Chooses `mu = −c1 ln 2`, `sigma² = −c2 ln 2`
    /// so that `η(q) = c1 q + c2 q²/2`.
    pub fn log_normal_from_cumulants(c1: f64, c2: f64) -> Result<Self> {
        if !c1.is_finite() || !c2.is_finite() || c2 > 0.0 {
            return Err(Error::invalid(format!(
                "log-normal cumulants need finite c1 and c2 <= 0; got ({c1}, {c2})"
            )));
        }
        Ok(MultiplierLaw::LogNormal {
            mu: -c1 * std::f64::consts::LN_2,
            sigma2: -c2 * std::f64::consts::LN_2,
        })
    }

    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            MultiplierLaw::Deterministic { w } => w > 0.0 && w.is_finite(),
            MultiplierLaw::LogNormal { mu, sigma2 } => {
                mu.is_finite() && sigma2.is_finite() && sigma2 >= 0.0
            }
            MultiplierLaw::TwoPoint { w0, w1 } => {
                w0 > 0.0 && w0.is_finite() && w1 > 0.0 && w1.is_finite()
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::invalid(format!("invalid multiplier law {self:?}")))
        }
    }

    /// `E[W^q]`.
    pub fn moment(&self, q: f64) -> f64 {
        match *self {
            MultiplierLaw::Deterministic { w } => w.powf(q),
            MultiplierLaw::LogNormal { mu, sigma2 } => (q * mu + 0.5 * q * q * sigma2).exp(),
            MultiplierLaw::TwoPoint { w0, w1 } => 0.5 * (w0.powf(q) + w1.powf(q)),
        }
    }

    /// First three cumulants of `ln W`. A single coefficient of a cascade at
    /// tree level `l` is a product of `l` draws, so its log-cumulants are `l`
    /// times these; against the practical octave number the slopes flip
    /// sign, giving scaling log-cumulants `c_m = −κ_m / ln 2`.
    pub fn log_cumulants(&self) -> [f64; 3] {
        match *self {
            MultiplierLaw::Deterministic { w } => [w.ln(), 0.0, 0.0],
            MultiplierLaw::LogNormal { mu, sigma2 } => [mu, sigma2, 0.0],
            MultiplierLaw::TwoPoint { w0, w1 } => {
                // Symmetric two-point distribution of ln W: odd central
                // moments vanish.
                let (a, b) = (w0.ln(), w1.ln());
                let half = 0.5 * (a - b);
                [0.5 * (a + b), half * half, 0.0]
            }
        }
    }

    /// `η(q) = −log2 E[W^q]`, evaluated in log space where possible.
    pub fn eta(&self, q: f64) -> f64 {
        match *self {
            MultiplierLaw::Deterministic { w } => -q * w.log2(),
            MultiplierLaw::LogNormal { mu, sigma2 } => {
                -(q * mu + 0.5 * q * q * sigma2) * std::f64::consts::LOG2_E
            }
            MultiplierLaw::TwoPoint { .. } => -self.moment(q).log2(),
        }
    }

    /// Draws one multiplier.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match *self {
            MultiplierLaw::Deterministic { w } => w,
            MultiplierLaw::LogNormal { mu, sigma2 } => {
                let z: f64 = rng.sample(StandardNormal);
                (mu + sigma2.sqrt() * z).exp()
            }
            MultiplierLaw::TwoPoint { w0, w1 } => {
                if rng.gen_bool(0.5) {
                    w0
                } else {
                    w1
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn log_normal_cumulant_parabola() {
        let law = MultiplierLaw::log_normal_from_cumulants(0.8, -0.08).unwrap();
        for q in [-3.0, -1.0, 0.5, 1.0, 2.0, 5.0, 20.0] {
            let want = 0.8 * q - 0.04 * q * q;
            assert!(
                (law.eta(q) - want).abs() < 1e-12,
                "η({q}) = {} vs {want}",
                law.eta(q)
            );
        }
        // η(20) = 16 − 16 = 0: the critical exponent sits exactly at 20.
        assert!(law.eta(20.0).abs() < 1e-12);
        assert!(MultiplierLaw::log_normal_from_cumulants(0.8, 0.1).is_err());
    }

    #[test]
    fn moments_and_eta_are_consistent() {
        let laws = [
            MultiplierLaw::Deterministic { w: 0.6 },
            MultiplierLaw::log_normal_from_cumulants(0.7, -0.05).unwrap(),
            MultiplierLaw::TwoPoint { w0: 0.4, w1: 0.9 },
        ];
        for law in laws {
            for q in [0.25, 1.0, 2.0, 3.5] {
                assert!((law.eta(q) + law.moment(q).log2()).abs() < 1e-10);
            }
            assert_eq!(law.moment(0.0), 1.0);
        }
    }

    #[test]
    fn two_point_moment_by_hand() {
        let law = MultiplierLaw::TwoPoint { w0: 0.4, w1: 0.9 };
        assert!((law.moment(2.0) - 0.5 * (0.16 + 0.81)).abs() < 1e-15);
        assert!((law.eta(1.0) + 0.65_f64.log2()).abs() < 1e-15);
    }

    #[test]
    fn sampling_matches_moments() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let laws = [
            MultiplierLaw::log_normal_from_cumulants(0.8, -0.08).unwrap(),
            MultiplierLaw::TwoPoint { w0: 0.4, w1: 0.9 },
        ];
        for law in laws {
            let n = 200_000;
            let (mut m1, mut m2) = (0.0, 0.0);
            for _ in 0..n {
                let w = law.sample(&mut rng);
                m1 += w;
                m2 += w * w;
            }
            m1 /= n as f64;
            m2 /= n as f64;
            assert!((m1 / law.moment(1.0) - 1.0).abs() < 0.02, "mean off: {m1}");
            assert!((m2 / law.moment(2.0) - 1.0).abs() < 0.03, "m2 off: {m2}");
        }
    }

    #[test]
    fn validation_rejects_bad_parameters() {
        assert!(MultiplierLaw::Deterministic { w: 0.0 }.validate().is_err());
        assert!(MultiplierLaw::TwoPoint { w0: 0.5, w1: -1.0 }.validate().is_err());
        assert!(MultiplierLaw::LogNormal { mu: 0.0, sigma2: -1.0 }.validate().is_err());
        assert!(MultiplierLaw::Deterministic { w: 0.7 }.validate().is_ok());
    }

    #[test]
    fn serde_round_trip() {
        let law = MultiplierLaw::log_normal_from_cumulants(0.8, -0.08).unwrap();
        let js = serde_json::to_string(&law).unwrap();
        assert!(js.contains("log_normal"));
        let back: MultiplierLaw = serde_json::from_str(&js).unwrap();
        assert_eq!(law, back);
    }
}
