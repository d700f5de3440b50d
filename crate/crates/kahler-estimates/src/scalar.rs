//! Scalar curvature along runs: the lower bound t·R ≥ −n and the evolution
//! (∂_t − Δ)R = |Ric|² ≥ R²/n.

use crate::report::{EstimateReport, SlackTracker};
use kahler_flow::{FlowSetup, Frame};
use kahler_geometry::{linalg::CMat, Real};

fn pt<T: Real>(setup: &FlowSetup<T>, i: usize) -> [(f64, f64); 1] {
    let z = setup.grid.points[i];
    [(z.re.as_f64(), z.im.as_f64())]
}

/// Worst t·R + n over evolving nodes of every frame.
pub fn scalar_lower_bound_check<T: Real>(
    setup: &FlowSetup<T>,
    frames: &[Frame<T>],
    n: usize,
    tolerance: f64,
) -> EstimateReport {
    let mut tr = SlackTracker::new("scalar-lower-bound", tolerance);
    for f in frames {
        let t = f.time.as_f64();
        for i in setup.grid.active_indices() {
            let r = (f.ricci[i] / f.lambda[i]).as_f64();
            tr.push(t * r + n as f64, &pt(setup, i), t);
        }
    }
    tr.finish()
}

/// |Ric|²_g − R²/n for Hermitian g and Ric.
pub fn ricci_inequality_slack<T: Real>(g: &CMat<T>, ric: &CMat<T>) -> Result<T, kahler_geometry::GeomError> {
    let a = g.inverse()?.matmul(ric);
    let r = a.trace().re;
    let sq = a.matmul(&a).trace().re;
    Ok(sq - r * r / T::from_usize_lossy(g.dim()))
}

/// Pointwise |Ric|² − R²/n at evolving nodes of every frame (n = 1 grids).
pub fn ricci_inequality_check<T: Real>(setup: &FlowSetup<T>, frames: &[Frame<T>], tolerance: f64) -> EstimateReport {
    let mut tr = SlackTracker::new("ricci-square-inequality", tolerance);
    for f in frames {
        for i in setup.grid.active_indices() {
            let g = CMat::scalar(kahler_geometry::scalar::cr(f.lambda[i]));
            let ric = CMat::scalar(kahler_geometry::scalar::cr(f.ricci[i]));
            let s = ricci_inequality_slack(&g, &ric).map(|v| v.as_f64()).unwrap_or(f64::NAN);
            tr.push(s, &pt(setup, i), f.time.as_f64());
        }
    }
    tr.finish()
}

/// Largest |∂_tR − ΔR − |Ric|²| over evolving nodes of interior frames, with
/// ∂_t by central differences between neighbouring frames and Δ = g^{11̄}∂∂̄
/// from the grid stencil.
#[derive(Clone, Debug)]
pub struct IdentityResidual {
    pub max_abs: f64,
    pub at: (f64, f64),
    pub time: f64,
    pub samples: usize,
}

pub fn scalar_evolution_residual<T: Real>(setup: &FlowSetup<T>, frames: &[Frame<T>]) -> IdentityResidual {
    let mut out = IdentityResidual { max_abs: 0.0, at: (0.0, 0.0), time: 0.0, samples: 0 };
    let scal: Vec<Vec<T>> = frames.iter().map(|f| f.scalar()).collect();
    let quarter = T::lit(0.25);
    for k in 1..frames.len().saturating_sub(1) {
        let dt = frames[k + 1].time - frames[k - 1].time;
        let lap = setup.grid.laplacian(&scal[k]);
        for i in setup.grid.active_indices() {
            let lam = frames[k].lambda[i];
            let r = scal[k][i];
            let rate = (scal[k + 1][i] - scal[k - 1][i]) / dt;
            let res = (rate - quarter * lap[i] / lam - r * r).abs().as_f64();
            out.samples += 1;
            if !(res <= out.max_abs) {
                out.max_abs = res;
                out.at = pt(setup, i)[0];
                out.time = frames[k].time.as_f64();
            }
        }
    }
    out
}
