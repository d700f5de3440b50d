//! Checks on normalized runs: monotonicity of φ̃′ and φ̃′ + φ̃, and
//! convergence to the Kähler-Einstein metric.

use crate::report::{EstimateReport, SlackTracker};
use kahler_flow::{ke_residual, FlowSetup, Frame};
use kahler_geometry::Real;

/// φ̃′ ≤ 0, φ̃′ + φ̃ ≤ 0 and φ̃′ + φ̃ non-increasing between frames, with
/// tolerance `base + rate·Δs` for the frame spacing Δs.
pub fn potential_monotonicity_check<T: Real>(
    setup: &FlowSetup<T>,
    frames: &[Frame<T>],
    base: f64,
    rate: f64,
) -> EstimateReport {
    let spacing = frames.windows(2).map(|w| (w[1].time - w[0].time).as_f64()).fold(0.0, f64::max);
    let tol = base + rate * spacing;
    let mut tr = SlackTracker::new("potential-monotonicity", tol);
    let mut worst_rate = f64::INFINITY;
    let mut worst_drop = f64::INFINITY;
    for (k, f) in frames.iter().enumerate() {
        let s = f.time.as_f64();
        for i in setup.grid.active_indices() {
            let z = setup.grid.points[i];
            let p = [(z.re.as_f64(), z.im.as_f64())];
            let rate_i = f.potential_rate[i].as_f64();
            let sum = rate_i + f.potential[i].as_f64();
            tr.push(-rate_i, &p, s);
            tr.push(-sum, &p, s);
            worst_rate = worst_rate.min(-rate_i);
            if k > 0 {
                let prev = frames[k - 1].potential_rate[i].as_f64() + frames[k - 1].potential[i].as_f64();
                tr.push(prev - sum, &p, s);
                worst_drop = worst_drop.min(prev - sum);
            }
        }
    }
    tr.finish().note("worst_rate_slack", worst_rate).note("worst_monotone_slack", worst_drop)
}

/// Convergence of a normalized run to a known Kähler-Einstein metric.
///
/// Passes when, at the last frame, sup|Ric(g̃) + g̃|_g̃ over all evolving
/// nodes and the sup-error against `exact` on |z| ≤ `within` are both at
/// most `threshold`, and the residual never increases over the last half of
/// the frames.
pub fn ke_convergence_check<T: Real>(
    setup: &FlowSetup<T>,
    frames: &[Frame<T>],
    exact: Option<&[T]>,
    within: T,
    threshold: f64,
) -> EstimateReport {
    let Some(last) = frames.last() else {
        return EstimateReport::not_applicable("ke-convergence", "no frames");
    };
    let residuals: Vec<f64> = frames.iter().map(|f| ke_residual(&setup.grid, &f.lambda, &f.ricci, None).as_f64()).collect();
    let half = frames.len() / 2;
    let tail_ok = residuals[half..].windows(2).all(|w| w[1] <= w[0]);
    let final_res = *residuals.last().unwrap();
    let sup_err = exact.map(|ex| {
        setup
            .grid
            .active_indices()
            .filter(|&i| setup.grid.radius(i) <= within)
            .map(|i| (last.lambda[i] - ex[i]).abs().as_f64())
            .fold(0.0, f64::max)
    });
    let mut tr = SlackTracker::new("ke-convergence", 0.0);
    let s = last.time.as_f64();
    tr.push(threshold - final_res, &[], s);
    if let Some(e) = sup_err {
        tr.push(threshold - e, &[], s);
    }
    if !tail_ok {
        tr.push(f64::NEG_INFINITY, &[], s);
    }
    let mut rep = tr
        .finish()
        .note("final_ke_residual", final_res)
        .note("tail_monotone", if tail_ok { 1.0 } else { 0.0 });
    if let Some(e) = sup_err {
        rep = rep.note("final_sup_error", e);
    }
    rep
}
