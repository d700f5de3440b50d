//! Sweeps of the cutoff profile: support, monotonicity, the weighted
//! derivative bounds e^{−k𝔉}𝔉⁽ᵏ⁾ and the two-sided ratio constants.

use crate::cutoff::{Cutoff, CutoffError};
use kahler_estimates::{EstimateReport, SlackTracker};

/// Sample points in [0, 1): a uniform block, a block inside the switch
/// interval and a block approaching 1 geometrically down to 1 − τ·10⁻⁴.
pub fn profile_sweep(c: &Cutoff<f64>, points: usize) -> Vec<f64> {
    let n1 = points * 2 / 5;
    let n2 = points * 3 / 10;
    let n3 = points - n1 - n2;
    let mut s: Vec<f64> = (0..n1).map(|j| j as f64 / n1 as f64).collect();
    s.extend((0..=n2.saturating_sub(1)).map(|j| c.start + (c.end - c.start) * j as f64 / (n2.max(2) - 1) as f64));
    s.extend((0..n3).map(|j| 1.0 - c.tau * 10f64.powf(-4.0 * j as f64 / (n3.max(2) - 1) as f64)));
    s
}

/// Radius used for the two-sided ratio at s: half of τ(1 − s), so that
/// s ± radius stays inside (0, 1).
pub fn ratio_radius(tau: f64, s: f64) -> f64 {
    0.5 * tau * (1.0 - s)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RatioConstants {
    /// sup (exp(𝔉(s+r) − 𝔉(s−r)) − 1)/τ
    pub c2: f64,
    /// inf r·exp(𝔉(s−r))/τ²
    pub c3: f64,
    /// min exp(𝔉(s+r) − 𝔉(s−r)); at least 1 by monotonicity
    pub min_ratio: f64,
    pub samples: usize,
}

/// Calibrates the ratio constants over s ∈ (1 − 2τ, 1): `points` samples,
/// half uniform and half clustering geometrically at 1.
pub fn ratio_constants(c: &Cutoff<f64>, points: usize) -> Result<RatioConstants, CutoffError> {
    let tau = c.tau;
    let half = points / 2;
    let mut ss: Vec<f64> = (1..=half).map(|j| 1.0 - 2.0 * tau + 2.0 * tau * j as f64 / (half + 1) as f64).collect();
    ss.extend((1..=points - half).map(|j| 1.0 - 2.0 * tau * 10f64.powf(-6.0 * j as f64 / (points - half) as f64)));
    let mut out = RatioConstants { c2: 0.0, c3: f64::INFINITY, min_ratio: f64::INFINITY, samples: 0 };
    for s in ss {
        let r = ratio_radius(tau, s);
        let lo = c.frak(s - r)?;
        let ratio = (c.frak(s + r)? - lo).exp();
        out.c2 = out.c2.max((ratio - 1.0) / tau);
        out.c3 = out.c3.min(r * lo.exp() / (tau * tau));
        out.min_ratio = out.min_ratio.min(ratio);
        out.samples += 1;
    }
    Ok(out)
}

/// Structural checks plus the sweep of sup e^{−k𝔉}|𝔉⁽ᵏ⁾| for k = 1..=max_k.
///
/// Satisfied when 𝔉 is exactly zero up to the switch, 𝔉′ ≥ 0, 0 ≤ φ′ ≤ 2/τ²,
/// every weighted supremum is finite and the ratio bounds hold with the
/// calibrated constants. Notes carry the suprema (`sup_k1`, ...) and
/// `c2`, `c3`.
pub fn frak_properties_check(c: &Cutoff<f64>, max_k: usize, points: usize) -> Result<EstimateReport, CutoffError> {
    let tau = c.tau;
    let mut tr = SlackTracker::new("cutoff-properties", 0.0);
    let mut sups = vec![0.0f64; max_k + 1];
    let mut zero_region = 0.0f64;
    for s in profile_sweep(c, points) {
        let at = [(s, 0.0)];
        let j = c.frak_jet2(s)?;
        let phi = c.phi_jet(s);
        if s <= c.start {
            zero_region = zero_region.max(j[0].abs());
            tr.push(-j[0].abs(), &at, 0.0);
        }
        tr.push(j[1], &at, 0.0);
        tr.push(phi[1].min(2.0 / (tau * tau) - phi[1]), &at, 0.0);
        let w = (-j[0]).exp();
        for (k, sup) in sups.iter_mut().enumerate().skip(1) {
            let v = w.powi(k as i32) * c.frak_derivative(s, k)?.abs();
            if !v.is_finite() {
                tr.push(f64::NAN, &at, 0.0);
            }
            *sup = sup.max(v);
        }
    }
    let edge = c.frak(c.start)?;
    tr.push(-edge.abs(), &[(c.start, 0.0)], 0.0);
    let ratio = ratio_constants(c, points)?;
    tr.push(ratio.min_ratio - 1.0, &[], 0.0);
    let mut rep = tr
        .finish()
        .note("tau", tau)
        .note("zero_region_max", zero_region.max(edge.abs()))
        .note("c2", ratio.c2)
        .note("c3", ratio.c3)
        .note("plateau_quad_error", c.plateau.error);
    for (k, s) in sups.iter().enumerate().skip(1) {
        rep = rep.note(&format!("sup_k{k}"), *s);
    }
    Ok(rep)
}
