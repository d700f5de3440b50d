//! Heat residual of Λ = tr_g h along grid runs, term by term.

use kahler_flow::{FlowSetup, Frame};
use kahler_geometry::{
    jet, linalg::CMat, scalar::cr, trace_and_terms, GeomError, MetricJet, MetricProvider, Real, TraceInputs,
};

#[derive(Clone, Debug)]
pub struct TraceRunResidual {
    pub max_abs: f64,
    pub at: (f64, f64),
    pub time: f64,
    pub samples: usize,
    /// Largest |(I) + (II) + (III)| seen, for scale.
    pub max_terms: f64,
}

/// Jet of the grid metric at node i. First derivatives come from
/// differencing log(λ/λ_h), which is smooth even where λ is steep, plus the
/// analytic ∂ log λ_h; ∂∂̄λ = λ(−Ric + |∂ log λ|²) uses the frame's Ricci form.
fn grid_jet<T: Real>(lam: T, ric: T, dlog_ratio: kahler_geometry::C<T>, hj: &MetricJet<T>) -> MetricJet<T> {
    let lh = hj.g[(0, 0)].re;
    let dlog = dlog_ratio + hj.dg[0][(0, 0)] / cr(lh);
    let mut j = MetricJet::order0(CMat::scalar(cr(lam)));
    j.dg = vec![CMat::scalar(dlog * cr(lam))];
    j.ddg = vec![CMat::scalar(cr(lam * (-ric + dlog.norm_sqr())))];
    j
}

/// (∂_t − Δ)Λ − [(I) + (II) + (III)] at evolving nodes of interior frames.
/// Frames must be equally spaced in time.
pub fn trace_heat_residual<T: Real>(
    setup: &FlowSetup<T>,
    frames: &[Frame<T>],
    h: &dyn MetricProvider<T>,
) -> Result<TraceRunResidual, GeomError> {
    let grid = &setup.grid;
    let mut hjets = Vec::with_capacity(grid.len());
    for z in &grid.points {
        hjets.push(jet(h, std::slice::from_ref(z), 2)?);
    }
    let hv: Vec<T> = hjets.iter().map(|j| j.g[(0, 0)].re).collect();
    let lambdas: Vec<Vec<T>> = frames.iter().map(|f| f.lambda.iter().zip(&hv).map(|(&l, &x)| x / l).collect()).collect();
    let mut out = TraceRunResidual { max_abs: 0.0, at: (0.0, 0.0), time: 0.0, samples: 0, max_terms: 0.0 };
    let quarter = T::lit(0.25);
    for k in 1..frames.len().saturating_sub(1) {
        let f = &frames[k];
        let dt = frames[k + 1].time - frames[k - 1].time;
        let ratio_log: Vec<T> = f.lambda.iter().zip(&hv).map(|(&l, &x)| (l / x).ln()).collect();
        let dlr = grid.dz(&ratio_log);
        let lap = grid.laplacian(&lambdas[k]);
        let grad = grid.dz(&lambdas[k]);
        for i in grid.active_indices() {
            let z = [grid.points[i]];
            let gj = grid_jet(f.lambda[i], f.ricci[i], dlr[i], &hjets[i]);
            let inputs = TraceInputs {
                dt_lambda: (lambdas[k + 1][i] - lambdas[k - 1][i]) / dt,
                lap_lambda: quarter * lap[i] / f.lambda[i],
                grad_lambda: Some(vec![grad[i]]),
            };
            let d = trace_and_terms(&gj, &hjets[i], &z, &inputs)?;
            let r = d.heat_residual.abs().as_f64();
            out.samples += 1;
            out.max_terms = out.max_terms.max((d.term_i + d.term_ii + d.term_iii).abs().as_f64());
            if !(r <= out.max_abs) {
                out.max_abs = r;
                out.at = (z[0].re.as_f64(), z[0].im.as_f64());
                out.time = f.time.as_f64();
            }
        }
    }
    Ok(out)
}
