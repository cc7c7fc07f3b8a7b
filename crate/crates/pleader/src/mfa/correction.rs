//! Finite-resolution correction of p-leader statistics.
//!
//! At octave `j` the leader sum only spans the `j` finer-or-equal octaves
//! that exist in the data, while the scaling model assumes an infinite
//! cascade of fine scales. For an exponent `η` governing the decay of
//! coefficient powers, the truncated geometric mass is
//!
//! `γ(j, η) = Σ_{m=0}^{j−1} 2^{−mη} = (1 − 2^{−jη}) / (1 − 2^{−η})`
//!
//! with the continuity value `γ = j` as `η → 0`. Dividing the p-th leader
//! power by `γ` restores the infinite-cascade normalization, which turns the
//! systematic curvature of log-structure functions at fine octaves into
//! straight lines. Concretely `S(q,j)` is multiplied by `γ^{−q/p}` and
//! `C(1,j)` is shifted by `−ln(γ)/p`; higher cumulants measure centred
//! fluctuations and are untouched. With `p = ∞` the leader is a maximum, not
//! a truncated sum, and the correction is the identity.

use crate::error::{Error, Result};

use super::cumulants::CumulantTable;
use super::structure::StructureTable;

/// Below this magnitude of `η` the geometric sum is evaluated by its limit.
const ETA_LINEAR_THRESHOLD: f64 = 1e-8;

/// Truncated geometric mass `γ(count, η)` where `count ≥ 1` is the number of
/// finer-or-equal octaves entering the leader sum.
pub fn gamma_factor(count: usize, eta: f64) -> f64 {
    debug_assert!(count >= 1, "octave count must be at least 1");
    if eta.abs() < ETA_LINEAR_THRESHOLD {
        return count as f64;
    }
    let r = 2.0_f64.powf(-eta);
    (1.0 - r.powi(count as i32)) / (1.0 - r)
}

/// Applies the correction to a leader structure-function table.
///
/// `eta_p` is the scaling exponent of the p-th coefficient moment (typically
/// estimated from coefficient structure functions at the same `p`). Raw
/// coefficient tables and already-corrected tables are rejected.
pub fn correct_structure(table: &StructureTable, eta_p: f64) -> Result<StructureTable> {
    let p = table
        .p
        .ok_or_else(|| Error::invalid("correction applies to leader tables only"))?;
    if table.corrected {
        return Err(Error::invalid("structure table is already corrected"));
    }
    let mut out = table.clone();
    out.corrected = true;
    if p.is_infinite() {
        return Ok(out);
    }
    if !eta_p.is_finite() {
        return Err(Error::invalid(format!("non-finite correction exponent {eta_p}")));
    }
    out.eta_used = Some(eta_p);
    for (qi, &q) in table.q.iter().enumerate() {
        for ji in 0..table.n_octaves() {
            let gamma = gamma_factor(table.octaves_below(ji), eta_p);
            out.s[qi][ji] = table.s[qi][ji] * gamma.powf(-q / p);
        }
    }
    Ok(out)
}

/// Applies the correction to a log-leader cumulant table: the first cumulant
/// is shifted by `−ln γ(j, η) / p`, higher orders are returned unchanged.
pub fn correct_cumulants(table: &CumulantTable, eta_p: f64) -> Result<CumulantTable> {
    if table.corrected {
        return Err(Error::invalid("cumulant table is already corrected"));
    }
    let mut out = table.clone();
    out.corrected = true;
    if table.p.is_infinite() {
        return Ok(out);
    }
    if !eta_p.is_finite() {
        return Err(Error::invalid(format!("non-finite correction exponent {eta_p}")));
    }
    out.eta_used = Some(eta_p);
    for ji in 0..table.n_octaves() {
        let gamma = gamma_factor(table.octaves_below(ji), eta_p);
        out.c[0][ji] -= gamma.ln() / table.p;
    }
    Ok(out)
}
