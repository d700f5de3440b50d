//! The trace barrier Λ ≤ v(t) − 1 with v(t) = ((nα + 1)^{−3} − 3c₁𝔰t)^{−1/3}.

use crate::report::{EstimateReport, SlackTracker};
use kahler_flow::{FlowSetup, Frame};
use kahler_geometry::{metric_at, MetricProvider, Real};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BarrierError {
    #[error("barrier constants invalid: {0}")]
    Invalid(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BarrierConfig {
    pub n: usize,
    /// α⁻¹h ≤ g₀ ≤ αh.
    pub alpha: f64,
    /// Torsion and derivative bound on g₀.
    pub beta: f64,
    /// Level of the negative holomorphic sectional curvature bound (HSC ≤ −k).
    pub k: f64,
    /// Curvature-torsion bound on h.
    pub kappa0: f64,
    /// Overrides κ₀ + c₂β(1 + β) when set.
    pub s_frak: Option<f64>,
    pub c1: f64,
    pub c2: f64,
    /// Horizon used by the ODE bound.
    pub horizon: f64,
}

impl Default for BarrierConfig {
    fn default() -> Self {
        BarrierConfig { n: 1, alpha: 1.0, beta: 0.0, k: 0.0, kappa0: 0.0, s_frak: None, c1: 1.0, c2: 1.0, horizon: 1.0 }
    }
}

impl BarrierConfig {
    pub fn validate(&self) -> Result<(), BarrierError> {
        let mut bad = Vec::new();
        if self.n == 0 {
            bad.push("n must be positive".to_string());
        }
        if !(self.alpha >= 1.0) {
            bad.push(format!("alpha = {} < 1", self.alpha));
        }
        if !(self.beta >= 0.0) {
            bad.push(format!("beta = {} < 0", self.beta));
        }
        if !(self.kappa0 >= 0.0) {
            bad.push(format!("kappa0 = {} < 0", self.kappa0));
        }
        if !(self.c1 >= 0.0 && self.c2 >= 0.0) {
            bad.push("c1, c2 must be non-negative".into());
        }
        if bad.is_empty() {
            Ok(())
        } else {
            Err(BarrierError::Invalid(bad.join("; ")))
        }
    }

    pub fn s_frak(&self) -> f64 {
        self.s_frak.unwrap_or(self.kappa0 + self.c2 * self.beta * (1.0 + self.beta))
    }

    fn base(&self) -> f64 {
        (self.n as f64 * self.alpha + 1.0).powi(-3)
    }

    /// Predicted existence time 1/(2c₁(nα + 1)³𝔰); infinite when 𝔰 = 0.
    pub fn existence_time(&self) -> Result<f64, BarrierError> {
        let s = self.s_frak();
        if s < 0.0 {
            return Err(BarrierError::Invalid(format!("s_frak = {s} < 0")));
        }
        Ok(self.base() / (2.0 * self.c1 * s))
    }

    /// End of the interval on which v is finite.
    pub fn blowup_time(&self) -> f64 {
        self.base() / (3.0 * self.c1 * self.s_frak())
    }

    /// v(t), or None past the blow-up time.
    pub fn v(&self, t: f64) -> Option<f64> {
        let d = self.base() - 3.0 * self.c1 * self.s_frak() * t;
        (d > 0.0).then(|| d.powf(-1.0 / 3.0))
    }

    /// Smallest c₁ with Λ ≤ v(t) − 1 at every (t, sup Λ) sample.
    pub fn minimal_c1(&self, series: &[(f64, f64)]) -> f64 {
        let s = self.s_frak();
        series
            .iter()
            .filter(|&&(t, _)| t > 0.0)
            .map(|&(t, lam)| {
                let need = self.base() - (lam + 1.0).powi(-3);
                if need <= 0.0 {
                    0.0
                } else if s == 0.0 {
                    f64::INFINITY
                } else {
                    need / (3.0 * s * t)
                }
            })
            .fold(0.0, f64::max)
    }
}

/// sup over evolving nodes of Λ = tr_g h for each frame, as (t, sup Λ).
pub fn trace_series<T: Real>(
    setup: &FlowSetup<T>,
    frames: &[Frame<T>],
    h: &dyn MetricProvider<T>,
) -> Result<Vec<(f64, f64)>, kahler_geometry::GeomError> {
    let hv = h_samples(setup, h)?;
    Ok(frames
        .iter()
        .map(|f| {
            let sup = setup.grid.active_indices().map(|i| (hv[i] / f.lambda[i]).as_f64()).fold(f64::NEG_INFINITY, f64::max);
            (f.time.as_f64(), sup)
        })
        .collect())
}

pub(crate) fn h_samples<T: Real>(
    setup: &FlowSetup<T>,
    h: &dyn MetricProvider<T>,
) -> Result<Vec<T>, kahler_geometry::GeomError> {
    setup.grid.points.iter().map(|z| Ok(metric_at(h, std::slice::from_ref(z))?[(0, 0)].re)).collect()
}

/// Λ(t) ≤ v(t) − 1 at every frame inside v's domain; later frames are
/// counted in the `out_of_domain` note and not judged.
pub fn trace_barrier_check(series: &[(f64, f64)], cfg: &BarrierConfig, tolerance: f64) -> EstimateReport {
    let mut tr = SlackTracker::new("trace-barrier", tolerance);
    let mut outside = 0usize;
    for &(t, lam) in series {
        match cfg.v(t) {
            Some(v) => tr.push(v - 1.0 - lam, &[], t),
            None => outside += 1,
        }
    }
    tr.finish().note("out_of_domain", outside as f64).note("c1", cfg.c1).note("s_frak", cfg.s_frak())
}
