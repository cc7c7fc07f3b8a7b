//! Random wavelet cascades and multiplicative wavelet series, with exact
//! moment oracles for restricted p-leader structure functions.
//!
//! Two 1D constructions share the same multiplier law but differ in their
//! dependence structure:
//!
//! * [`synth_rwc`] builds a binary multiplier tree: each node's value is its
//!   parent's value times a fresh iid multiplier, so coefficients sharing
//!   ancestry are correlated.
//! * [`synth_mrws`] draws every coefficient independently as the product of
//!   `l` fresh multipliers, where `l` is its tree level — same marginal
//!   moments as the tree, no correlations.
//!
//! Oracles (practical octave `j`, tree level `l = depth + 1 − j`, multiplier
//! moments `E[W^q] = 2^{−η(q)}`):
//!
//! * both constructions: `E[S̆(p, j)] = 2^{−l η(p)} γ(j, η(p))` by linearity;
//! * tree ([`oracle_rwc_sf`] with [`RwcOrder::TwoP`]):
//!   `E[S̆(2p, j)] = 2^{−l η(2p)} Q(j, p)` where `Q` sums over ordered pairs
//!   of in-cell coefficients grouped by the depth of their lowest common
//!   ancestor below the cell root;
//! * independent series ([`oracle_mrws_moment2`]): the variance of the
//!   accumulated sum telescopes into three `γ` terms;
//! * independent series, any order `n ≥ 1` ([`oracle_mrws_bounds`]): the
//!   ratio `E[S̆(np, j)] / (2^{−l η(np)} γ(j, η(p))^n)` is bracketed below by
//!   Jensen's inequality and above by the `L^n` triangle inequality.

use rand::Rng;

use crate::cascades::law::MultiplierLaw;
use crate::error::{Error, Result};
use crate::mfa::gamma_factor;
use crate::wavelet::{ArrayData, Boundary, OctaveDetail, WaveletPyramid};

use super::dbwc::MAX_DEPTH_1D;

/// Which moment order an RWC oracle targets, relative to the leader
/// exponent `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RwcOrder {
    /// First moment of the accumulated sum (`q = p`).
    P,
    /// Second moment (`q = 2p`), which feels the tree correlations.
    TwoP,
}

fn check_synth_args(depth: usize, law: &MultiplierLaw) -> Result<()> {
    if depth == 0 || depth > MAX_DEPTH_1D {
        return Err(Error::invalid(format!(
            "cascade depth must lie in 1..={MAX_DEPTH_1D}, got {depth}"
        )));
    }
    law.validate()
}

fn check_oracle_args(p: f64, j: usize, depth: usize) -> Result<()> {
    if !(p > 0.0) || !p.is_finite() {
        return Err(Error::invalid(format!(
            "oracle requires finite positive p, got {p}"
        )));
    }
    if j == 0 || j > depth {
        return Err(Error::invalid(format!("octave {j} outside 1..={depth}")));
    }
    Ok(())
}

fn pyramid_from_levels(levels: Vec<Vec<f64>>) -> WaveletPyramid {
    let depth = levels.len();
    let octaves = (1..=depth)
        .map(|j| OctaveDetail {
            subbands: vec![ArrayData::One(levels[depth - j].clone())],
        })
        .collect();
    WaveletPyramid {
        dimension: 1,
        vanishing_moments: 0,
        boundary: Boundary::Periodic,
        discard_border: 0,
        octaves,
        approx: None,
    }
}

/// Synthesizes a tree-correlated random wavelet cascade: level `l` holds
/// `2^l` nodes, each its parent's value times a fresh multiplier. Multipliers
/// are drawn level by level from the root down, left to right.
pub fn synth_rwc<R: Rng + ?Sized>(
    depth: usize,
    law: &MultiplierLaw,
    rng: &mut R,
) -> Result<WaveletPyramid> {
    check_synth_args(depth, law)?;
    let mut levels: Vec<Vec<f64>> = Vec::with_capacity(depth);
    let mut prev = vec![1.0_f64];
    for _ in 1..=depth {
        let mut cur = Vec::with_capacity(prev.len() * 2);
        for &v in &prev {
            cur.push(v * law.sample(rng));
            cur.push(v * law.sample(rng));
        }
        levels.push(cur.clone());
        prev = cur;
    }
    Ok(pyramid_from_levels(levels))
}

/// Synthesizes a multiplicative random wavelet series: the coefficient at
/// tree level `l` and each position is a product of `l` fresh iid
/// multipliers, independent of every other coefficient. Levels are generated
/// from the root down, positions left to right.
pub fn synth_mrws<R: Rng + ?Sized>(
    depth: usize,
    law: &MultiplierLaw,
    rng: &mut R,
) -> Result<WaveletPyramid> {
    check_synth_args(depth, law)?;
    let mut levels: Vec<Vec<f64>> = Vec::with_capacity(depth);
    for l in 1..=depth {
        let n = 1usize << l;
        let mut cur = Vec::with_capacity(n);
        for _ in 0..n {
            let mut v = 1.0;
            for _ in 0..l {
                v *= law.sample(rng);
            }
            cur.push(v);
        }
        levels.push(cur);
    }
    Ok(pyramid_from_levels(levels))
}

/// Number of ordered pairs of descendants at depths `m1` and `m2` below a
/// common cell root whose lowest common ancestor sits exactly `h` levels
/// below that root (`0 ≤ h ≤ min(m1, m2)`). Summed over `h` this recovers
/// all `2^{m1 + m2}` ordered pairs.
pub fn lca_pair_count(m1: usize, m2: usize, h: usize) -> u64 {
    let min = m1.min(m2);
    debug_assert!(h <= min, "LCA depth {h} exceeds min({m1}, {m2})");
    if h == min {
        1u64 << (m1 + m2 - min)
    } else {
        1u64 << (m1 + m2 - h - 1)
    }
}

/// Pair sum `Q(j, p) = Σ_{m1,m2=0}^{j−1} u^{m1+m2} W(min(m1,m2))` with
/// `u = E[W^p]`, `r = E[W^{2p}] / E[W^p]^2`, and
/// `W(μ) = ½ Σ_{h=0}^{μ−1} (r/2)^h + (r/2)^μ` collecting lowest common
/// ancestor depths. Equals `γ(j, η(p))^2` when multipliers are deterministic.
fn rwc_pair_sum(law: &MultiplierLaw, p: f64, j: usize) -> f64 {
    let u = law.moment(p);
    let r = law.moment(2.0 * p) / (u * u);
    let half = 0.5 * r;
    // wtab[mu] = ½·Σ_{h<mu} half^h + half^mu, built incrementally.
    let mut wtab = Vec::with_capacity(j);
    let mut partial = 0.0_f64;
    let mut pw = 1.0_f64;
    for _ in 0..j {
        wtab.push(0.5 * partial + pw);
        partial += pw;
        pw *= half;
    }
    let upow: Vec<f64> = (0..j).scan(1.0, |acc, _| {
        let v = *acc;
        *acc *= u;
        Some(v)
    })
    .collect();
    let mut q_sum = 0.0;
    for m1 in 0..j {
        for m2 in 0..j {
            q_sum += upow[m1] * upow[m2] * wtab[m1.min(m2)];
        }
    }
    q_sum
}

/// Correlation factor `f(j, p) = Q(j, p) / γ(j, η(p))^2` by which the tree's
/// second moment exceeds the square of its first; `f(1, p) = 1`, and
/// deterministic multipliers give `f ≡ 1`.
pub fn rwc_pair_factor(law: &MultiplierLaw, p: f64, j: usize) -> Result<f64> {
    check_oracle_args(p, j, j)?;
    law.validate()?;
    let gamma = gamma_factor(j, law.eta(p));
    Ok(rwc_pair_sum(law, p, j) / (gamma * gamma))
}

/// Exact expected restricted p-leader structure function of a tree cascade,
/// at `q = p` ([`RwcOrder::P`]) or `q = 2p` ([`RwcOrder::TwoP`]).
pub fn oracle_rwc_sf(
    law: &MultiplierLaw,
    p: f64,
    j: usize,
    depth: usize,
    order: RwcOrder,
) -> Result<f64> {
    check_oracle_args(p, j, depth)?;
    law.validate()?;
    let l = (depth + 1 - j) as f64;
    Ok(match order {
        RwcOrder::P => 2.0_f64.powf(-l * law.eta(p)) * gamma_factor(j, law.eta(p)),
        RwcOrder::TwoP => 2.0_f64.powf(-l * law.eta(2.0 * p)) * rwc_pair_sum(law, p, j),
    })
}

/// Reference level `2^{−l η(np)} γ(j, η(p))^n` that the `n`-th moment of the
/// accumulated sum is compared against for the independent series.
pub fn mrws_ratio_denominator(
    law: &MultiplierLaw,
    p: f64,
    n: u32,
    j: usize,
    depth: usize,
) -> Result<f64> {
    check_oracle_args(p, j, depth)?;
    if n == 0 {
        return Err(Error::invalid("moment order n must be at least 1"));
    }
    law.validate()?;
    let l = (depth + 1 - j) as f64;
    let np = f64::from(n) * p;
    Ok(2.0_f64.powf(-l * law.eta(np)) * gamma_factor(j, law.eta(p)).powi(n as i32))
}

/// Bracket `(lower, upper)` for the ratio
/// `E[S̆(np, j)] / (2^{−l η(np)} γ(j, η(p))^n)` of the independent series:
/// Jensen gives the lower bound `2^{−l (n η(p) − η(np))}`, the `L^n`
/// triangle inequality the upper bound `(γ(j, η(np)/n) / γ(j, η(p)))^n`.
/// Both bounds equal 1 when `n = 1`.
pub fn oracle_mrws_bounds(
    law: &MultiplierLaw,
    p: f64,
    n: u32,
    j: usize,
    depth: usize,
) -> Result<(f64, f64)> {
    check_oracle_args(p, j, depth)?;
    if n == 0 {
        return Err(Error::invalid("moment order n must be at least 1"));
    }
    law.validate()?;
    let l = (depth + 1 - j) as f64;
    let nf = f64::from(n);
    let eta_p = law.eta(p);
    let eta_np = law.eta(nf * p);
    let lower = 2.0_f64.powf(-l * (nf * eta_p - eta_np));
    let upper = (gamma_factor(j, eta_np / nf) / gamma_factor(j, eta_p)).powi(n as i32);
    Ok((lower, upper))
}

/// Exact second moment `E[S̆(2p, j)]` of the independent series: the
/// accumulated sum is a weighted sum of independent terms, so its variance
/// telescopes into `γ` factors.
pub fn oracle_mrws_moment2(law: &MultiplierLaw, p: f64, j: usize, depth: usize) -> Result<f64> {
    check_oracle_args(p, j, depth)?;
    law.validate()?;
    let l = (depth + 1 - j) as f64;
    let eta_p = law.eta(p);
    let eta_2p = law.eta(2.0 * p);
    let mean = 2.0_f64.powf(-l * eta_p) * gamma_factor(j, eta_p);
    let variance = 2.0_f64.powf(-l * eta_2p) * gamma_factor(j, 1.0 + eta_2p)
        - 2.0_f64.powf(-2.0 * l * eta_p) * gamma_factor(j, 1.0 + 2.0 * eta_p);
    Ok(mean * mean + variance)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cascades::dbwc::synth_dbwc_1d;
    use crate::mfa::{compute_pleaders, sf_leaders, LeaderMode};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn lognormal() -> MultiplierLaw {
        MultiplierLaw::log_normal_from_cumulants(0.8, -0.08).unwrap()
    }

    fn two_point() -> MultiplierLaw {
        MultiplierLaw::TwoPoint { w0: 0.4, w1: 0.9 }
    }

    /// Pair sum evaluated the slow way: ordered pairs of in-cell
    /// coefficients grouped by lowest-common-ancestor depth, each pair
    /// contributing its exact product moment.
    fn pair_sum_by_lca(law: &MultiplierLaw, p: f64, j: usize) -> f64 {
        let a = law.moment(2.0 * p);
        let b = law.moment(p);
        let mut total = 0.0;
        for m1 in 0..j {
            for m2 in 0..j {
                for h in 0..=m1.min(m2) {
                    let count = lca_pair_count(m1, m2, h) as f64;
                    total += 2.0_f64.powi(-((m1 + m2) as i32))
                        * count
                        * a.powi(h as i32)
                        * b.powi((m1 + m2 - 2 * h) as i32);
                }
            }
        }
        total
    }

    /// Pair sum via the level recursion for a unit-root subtree:
    /// `z1_M = 1 + b z1`, `z2_M = 1 + 2 b z1 + (a z2 + b² z1²) / 2`.
    fn pair_sum_by_recursion(law: &MultiplierLaw, p: f64, j: usize) -> f64 {
        let a = law.moment(2.0 * p);
        let b = law.moment(p);
        let (mut z1, mut z2) = (1.0_f64, 1.0_f64);
        for _ in 1..j {
            let nz1 = 1.0 + b * z1;
            let nz2 = 1.0 + 2.0 * b * z1 + (a * z2 + b * b * z1 * z1) / 2.0;
            z1 = nz1;
            z2 = nz2;
        }
        z2
    }

    #[test]
    fn lca_counts_partition_all_pairs() {
        assert_eq!(lca_pair_count(0, 0, 0), 1);
        assert_eq!(lca_pair_count(2, 1, 1), 4);
        assert_eq!(lca_pair_count(2, 1, 0), 4);
        assert_eq!(lca_pair_count(3, 3, 3), 8);
        for m1 in 0..6 {
            for m2 in 0..6 {
                let total: u64 = (0..=m1.min(m2)).map(|h| lca_pair_count(m1, m2, h)).sum();
                assert_eq!(total, 1u64 << (m1 + m2));
            }
        }
    }

    #[test]
    fn pair_sum_three_ways() {
        for law in [lognormal(), two_point()] {
            for p in [0.5, 1.0, 2.0] {
                for j in 1..=12 {
                    let fast = rwc_pair_sum(&law, p, j);
                    let slow = pair_sum_by_lca(&law, p, j);
                    let rec = pair_sum_by_recursion(&law, p, j);
                    assert!((fast / slow - 1.0).abs() < 1e-12, "p={p} j={j}");
                    assert!((fast / rec - 1.0).abs() < 1e-12, "p={p} j={j}");
                }
            }
        }
    }

    #[test]
    fn pair_factor_properties() {
        // No pairs to correlate at j = 1, and deterministic multipliers have
        // no correlation at any octave.
        assert!((rwc_pair_factor(&lognormal(), 1.0, 1).unwrap() - 1.0).abs() < 1e-15);
        let det = MultiplierLaw::Deterministic { w: 0.7 };
        for j in 1..=10 {
            assert!((rwc_pair_factor(&det, 1.3, j).unwrap() - 1.0).abs() < 1e-12, "j={j}");
        }
        // Frozen offsets at depth-of-interest octave 12 for the log-normal
        // law with c1 = 0.8, c2 = -0.08: small and monotone in p.
        let frozen = [(0.5, 0.0076), (1.0, 0.0172), (2.0, 0.0264), (5.0, 0.0345)];
        for (p, expect) in frozen {
            let f = rwc_pair_factor(&lognormal(), p, 12).unwrap();
            let log2f = f.log2();
            assert!(log2f.abs() < 0.05, "p={p}: log2 f = {log2f}");
            assert!((log2f - expect).abs() < 5e-4, "p={p}: log2 f = {log2f}");
        }
    }

    /// Enumerates the full multiplier assignment of a two-point tree cascade
    /// (depth 3, octave 3 cell: 7 multipliers) and checks both oracles
    /// against the exact enumeration.
    #[test]
    fn tree_oracles_match_exhaustive_enumeration() {
        let law = two_point();
        let (w0, w1) = (0.4, 0.9);
        let p = 0.7;
        let (j, depth) = (3usize, 3usize);
        let mut sum_r = 0.0;
        let mut sum_r2 = 0.0;
        let masks = 1u32 << 7;
        for mask in 0..masks {
            let w = |bit: u32| -> f64 {
                if mask >> bit & 1 == 1 {
                    w1
                } else {
                    w0
                }
            };
            let v1 = w(0);
            let v2 = [v1 * w(1), v1 * w(2)];
            let v3 = [v2[0] * w(3), v2[0] * w(4), v2[1] * w(5), v2[1] * w(6)];
            let r = v1.powf(p)
                + 0.5 * v2.iter().map(|v| v.powf(p)).sum::<f64>()
                + 0.25 * v3.iter().map(|v| v.powf(p)).sum::<f64>();
            sum_r += r;
            sum_r2 += r * r;
        }
        let mean_r = sum_r / masks as f64;
        let mean_r2 = sum_r2 / masks as f64;
        let first = oracle_rwc_sf(&law, p, j, depth, RwcOrder::P).unwrap();
        let second = oracle_rwc_sf(&law, p, j, depth, RwcOrder::TwoP).unwrap();
        assert!((mean_r / first - 1.0).abs() < 1e-12);
        assert!((mean_r2 / second - 1.0).abs() < 1e-12);
    }

    /// Enumerates the independent series over the same cell geometry: one
    /// level-1 coefficient (1 multiplier), two level-2 coefficients (2 fresh
    /// each) and four level-3 coefficients (3 fresh each) — 17 independent
    /// two-point draws.
    #[test]
    fn independent_oracles_match_exhaustive_enumeration() {
        let law = two_point();
        let (w0, w1) = (0.4, 0.9);
        let p = 0.7;
        let (j, depth) = (3usize, 3usize);
        let mut sum_r = 0.0;
        let mut sum_r2 = 0.0;
        let masks = 1u32 << 17;
        for mask in 0..masks {
            let w = |bit: u32| if mask >> bit & 1 == 1 { w1 } else { w0 };
            let prod = |lo: u32, len: u32| (lo..lo + len).map(w).product::<f64>();
            let c1 = prod(0, 1);
            let c2 = [prod(1, 2), prod(3, 2)];
            let c3 = [prod(5, 3), prod(8, 3), prod(11, 3), prod(14, 3)];
            let r = c1.powf(p)
                + 0.5 * c2.iter().map(|v| v.powf(p)).sum::<f64>()
                + 0.25 * c3.iter().map(|v| v.powf(p)).sum::<f64>();
            sum_r += r;
            sum_r2 += r * r;
        }
        let mean_r = sum_r / masks as f64;
        let mean_r2 = sum_r2 / masks as f64;
        let first = mrws_ratio_denominator(&law, p, 1, j, depth).unwrap();
        let second = oracle_mrws_moment2(&law, p, j, depth).unwrap();
        assert!((mean_r / first - 1.0).abs() < 1e-12);
        assert!((mean_r2 / second - 1.0).abs() < 1e-12);
        // The exact second moment must respect the generic bracket.
        let denom = mrws_ratio_denominator(&law, p, 2, j, depth).unwrap();
        let (lo, hi) = oracle_mrws_bounds(&law, p, 2, j, depth).unwrap();
        let ratio = second / denom;
        assert!(ratio >= lo - 1e-12 && ratio <= hi + 1e-12);
    }

    #[test]
    fn bracket_contains_exact_second_moment_everywhere() {
        let depth = 12;
        for law in [lognormal(), two_point()] {
            for p in [0.5, 1.0] {
                for j in 1..=depth {
                    let denom = mrws_ratio_denominator(&law, p, 2, j, depth).unwrap();
                    let ratio = oracle_mrws_moment2(&law, p, j, depth).unwrap() / denom;
                    let (lo, hi) = oracle_mrws_bounds(&law, p, 2, j, depth).unwrap();
                    assert!(
                        ratio >= lo * (1.0 - 1e-12) && ratio <= hi * (1.0 + 1e-12),
                        "p={p} j={j}: {lo} <= {ratio} <= {hi}"
                    );
                }
            }
        }
    }

    #[test]
    fn bracket_degenerates_and_tightens() {
        let law = lognormal();
        let depth = 12;
        for j in 1..=depth {
            let (lo, hi) = oracle_mrws_bounds(&law, 0.5, 1, j, depth).unwrap();
            assert_eq!(lo, 1.0);
            assert_eq!(hi, 1.0);
        }
        for p in [0.5, 1.0] {
            let widths: Vec<f64> = (1..=depth)
                .map(|j| {
                    let (lo, hi) = oracle_mrws_bounds(&law, p, 2, j, depth).unwrap();
                    hi / lo
                })
                .collect();
            for w in &widths {
                assert!(*w >= 1.0);
            }
            for pair in widths.windows(2) {
                assert!(pair[1] <= pair[0] * (1.0 + 1e-12), "widths {widths:?}");
            }
        }
    }

    #[test]
    fn deterministic_law_reduces_to_binomial_cascade() {
        let law = MultiplierLaw::Deterministic { w: 0.6 };
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let rwc = synth_rwc(5, &law, &mut rng).unwrap();
        let dbwc = synth_dbwc_1d(5, &[0.6, 0.6]).unwrap();
        for j in 1..=5 {
            match (&rwc.octave(j).subbands[0], &dbwc.octave(j).subbands[0]) {
                (ArrayData::One(x), ArrayData::One(y)) => assert_eq!(x, y),
                _ => unreachable!(),
            }
        }
    }

    #[test]
    fn synthesis_is_seed_deterministic() {
        let law = lognormal();
        for synth in [synth_rwc, synth_mrws] {
            let a = synth(6, &law, &mut ChaCha8Rng::seed_from_u64(42)).unwrap();
            let b = synth(6, &law, &mut ChaCha8Rng::seed_from_u64(42)).unwrap();
            let c = synth(6, &law, &mut ChaCha8Rng::seed_from_u64(43)).unwrap();
            for j in 1..=6 {
                match (
                    &a.octave(j).subbands[0],
                    &b.octave(j).subbands[0],
                    &c.octave(j).subbands[0],
                ) {
                    (ArrayData::One(x), ArrayData::One(y), ArrayData::One(z)) => {
                        assert_eq!(x, y);
                        if j == 1 {
                            assert_ne!(x, z);
                        }
                    }
                    _ => unreachable!(),
                }
            }
        }
        assert!(synth_rwc(0, &law, &mut ChaCha8Rng::seed_from_u64(0)).is_err());
        assert!(synth_mrws(30, &law, &mut ChaCha8Rng::seed_from_u64(0)).is_err());
    }

    /// Monte-Carlo smoke check: empirical octave means of `S̆(p, ·)` and
    /// `S̆(2p, ·)` track their oracles within a few standard errors.
    #[test]
    fn monte_carlo_means_track_oracles() {
        let law = lognormal();
        let depth = 8;
        let p = 1.0;
        let n_mc = 300usize;
        // acc[j-1][construction][q-row] accumulates first and second sample
        // moments of the structure functions at q = p and q = 2p.
        let mut acc = [[[0.0_f64; 2]; 2]; 8];
        let mut acc2 = [[[0.0_f64; 2]; 2]; 8];
        for i in 0..n_mc {
            let mut rng = ChaCha8Rng::seed_from_u64(9000 + i as u64);
            for (which, pyr) in [
                synth_rwc(depth, &law, &mut rng).unwrap(),
                synth_mrws(depth, &law, &mut rng).unwrap(),
            ]
            .into_iter()
            .enumerate()
            {
                let field = compute_pleaders(&pyr, p, LeaderMode::Restricted).unwrap();
                let table = sf_leaders(&field, &[p, 2.0 * p]).unwrap();
                for j in 1..=depth {
                    for row in 0..2 {
                        let s = table.s[row][j - 1];
                        acc[j - 1][which][row] += s / n_mc as f64;
                        acc2[j - 1][which][row] += s * s / n_mc as f64;
                    }
                }
            }
        }
        let check = |mean: f64, var: f64, oracle: f64, what: &str| {
            let se = (var.max(0.0) / n_mc as f64).sqrt();
            assert!(
                (mean - oracle).abs() < 4.0 * se + 1e-12,
                "{what}: mean {mean} vs oracle {oracle} (se {se})"
            );
        };
        for j in [1usize, 4, 8] {
            for (which, name) in ["tree", "independent"].iter().enumerate() {
                let m = acc[j - 1][which][0];
                check(
                    m,
                    acc2[j - 1][which][0] - m * m,
                    oracle_rwc_sf(&law, p, j, depth, RwcOrder::P).unwrap(),
                    &format!("{name} first moment j={j}"),
                );
            }
            let m = acc[j - 1][0][1];
            check(
                m,
                acc2[j - 1][0][1] - m * m,
                oracle_rwc_sf(&law, p, j, depth, RwcOrder::TwoP).unwrap(),
                &format!("tree second moment j={j}"),
            );
            let m = acc[j - 1][1][1];
            check(
                m,
                acc2[j - 1][1][1] - m * m,
                oracle_mrws_moment2(&law, p, j, depth).unwrap(),
                &format!("independent second moment j={j}"),
            );
        }
    }
}
