use kahler_estimates::*;
use kahler_flow::*;
use kahler_geometry::{linalg::CMat, models::QuadraticMetric, chern_curvature, Catalog64, Provider64};
use std::sync::Arc;

fn provider(key: &str) -> Provider64 {
    Catalog64::standard().build(key, Some(1)).unwrap()
}

fn radial(key: &str, pts: usize, r_max: f64, b: Boundary) -> Arc<FlowSetup<f64>> {
    Arc::new(FlowSetup::new(Grid::radial(pts, r_max).unwrap(), provider(key).as_ref(), b).unwrap())
}

#[test]
fn scalar_bound_on_hyperbolic_homothety() {
    let su = radial("poincare-disk", 33, 0.95, Boundary::Homothety { rate: 2.0 });
    let mut st = FlowState::new(su.clone(), Form::Metric);
    let out = run(&mut st, &frame_times(0.0, 1.0, 0.1));
    let rep = scalar_lower_bound_check(&su, &out.frames, 1, 0.0);
    assert!(rep.satisfied);
    // min over frames of 1 − 2t/(1 + 2t) is at t = 1.
    assert!((rep.worst_slack - 1.0 / 3.0).abs() < 1e-9);
    assert_eq!(rep.worst_location.unwrap().time, 1.0);
}

#[test]
fn scalar_bound_on_flat_torus() {
    let su = Arc::new(FlowSetup::new(Grid::torus(8, 1.0).unwrap(), provider("euclidean").as_ref(), Boundary::Frozen).unwrap());
    let mut st = FlowState::new(su.clone(), Form::Metric);
    let out = run(&mut st, &frame_times(0.0, 1.0, 0.5));
    let rep = scalar_lower_bound_check(&su, &out.frames, 1, 0.0);
    assert_eq!(rep.worst_slack, 1.0);
}

#[test]
fn ricci_square_inequality() {
    // Einstein: equality.
    let g = CMat::<f64>::identity(3).scale_re(2.0);
    let ric = g.scale_re(-0.5);
    assert!(ricci_inequality_slack(&g, &ric).unwrap().abs() < 1e-14);
    // Random Ricci forms from non-Einstein metrics: strict inequality.
    for seed in 0..20 {
        let q = QuadraticMetric::<f64>::random(3, 0.3, seed);
        let z = vec![kahler_geometry::C::new(0.05, -0.02); 3];
        let pkg = chern_curvature(&q, &z).unwrap();
        let s = ricci_inequality_slack(&pkg.metric, pkg.ricci.as_ref().unwrap()).unwrap();
        assert!(s > 0.0, "seed {seed}: {s}");
    }
}

#[test]
fn trace_residual_on_homothety_is_small_and_shrinks() {
    let p = provider("poincare-disk");
    let mut res = Vec::new();
    for (pts, dt) in [(64usize, 4e-4), (128, 2e-4)] {
        let su = radial("poincare-disk", pts, 0.95, Boundary::Homothety { rate: 2.0 });
        let mut st = FlowState::new(su.clone(), Form::Metric);
        let out = run(&mut st, &frame_times(0.0, 0.004, dt));
        let r = trace_heat_residual(&su, &out.frames, p.as_ref()).unwrap();
        assert!((r.max_terms - 2.0).abs() < 0.01);
        res.push(r.max_abs);
    }
    assert!(res[0] < 2e-6 && res[0] / res[1] > 3.0, "{res:?}");
}

#[test]
fn trace_residual_on_perturbed_flow_converges() {
    let h = provider("poincare-disk");
    let mut res = Vec::new();
    for (pts, dt) in [(33usize, 2e-3), (65, 1e-3), (129, 5e-4)] {
        let su = radial("hyperbolic-bump", pts, 0.95, Boundary::Homothety { rate: 2.0 });
        let mut st = FlowState::new(su.clone(), Form::Metric);
        let out = run(&mut st, &frame_times(0.0, 0.02, dt));
        res.push(trace_heat_residual(&su, &out.frames, h.as_ref()).unwrap().max_abs);
    }
    assert!(res[1] / res[2] > 3.0, "{res:?}");
}

#[test]
fn scalar_evolution_on_torus_is_second_order() {
    let tb = provider("torus-bump");
    let mut res = Vec::new();
    for side in [16usize, 32, 64] {
        let su = Arc::new(FlowSetup::new(Grid::torus(side, std::f64::consts::TAU).unwrap(), tb.as_ref(), Boundary::Frozen).unwrap());
        let mut st = FlowState::new(su.clone(), Form::Metric);
        let out = run(&mut st, &frame_times(0.0, 0.1, 0.32 / side as f64));
        res.push(scalar_evolution_residual(&su, &out.frames).max_abs);
        let ineq = ricci_inequality_check(&su, &out.frames, 1e-10);
        assert!(ineq.satisfied && ineq.worst_slack.abs() < 1e-12);
    }
    assert!(res[1] / res[2] > 3.4, "{res:?}");
}

#[test]
fn normalized_checks_on_model_runs() {
    // Hyperbolic homothety: closed form g̃ = (2 + e^{−s})g₀.
    let su = radial("poincare-disk", 33, 0.95, Boundary::Homothety { rate: 2.0 });
    let mut st = FlowState::new(su.clone(), Form::Metric);
    st.advance_to(1.0).unwrap();
    let mut ns = st.normalize().unwrap();
    let out = run(&mut ns, &frame_times(0.0, 8.0, 0.5));
    let first = &out.frames[0];
    assert!(first.potential.iter().zip(&first.potential_rate).all(|(a, b)| a + b == 0.0));
    let mono = potential_monotonicity_check(&su, &out.frames, 1e-8, 1e-6);
    assert!(mono.satisfied, "{mono:?}");
    for f in &out.frames {
        let s = f.time;
        // φ̃′ from the closed-form volume ratio: log((2 + e^{−s})/3) − φ̃ ≤ 0.
        assert!(f.potential_rate.iter().all(|&v| v <= 1e-12), "s = {s}");
    }
    let exact: Vec<f64> = su.lambda0.iter().map(|l| 2.0 * l).collect();
    let conv = ke_convergence_check(&su, &out.frames, Some(&exact), 0.9, 0.05);
    assert!(conv.satisfied, "{conv:?}");
    assert_eq!(conv.noted("tail_monotone"), Some(1.0));

    // Flat torus: e^{−s}g₀, divergence by design.
    let tsu = Arc::new(FlowSetup::new(Grid::torus(8, 1.0).unwrap(), provider("euclidean").as_ref(), Boundary::Frozen).unwrap());
    let mut ns = NormalizedFlowState::from_initial(tsu.clone(), vec![1.0; 64]).unwrap();
    let out = run(&mut ns, &frame_times(0.0, 3.0, 0.5));
    assert!(potential_monotonicity_check(&tsu, &out.frames, 1e-8, 1e-6).satisfied);
    let conv = ke_convergence_check(&tsu, &out.frames, None, 1.0, 1e-3).expect_divergence();
    assert!(!conv.satisfied);
    assert_eq!(conv.verdict, Verdict::ExpectedDivergence);
    assert!((conv.noted("final_ke_residual").unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn exact_einstein_start_stays_converged() {
    let su = radial("poincare-ke", 33, 0.95, Boundary::Frozen);
    let g0 = su.lambda0.clone();
    let mut ns = NormalizedFlowState::from_initial(su.clone(), g0.clone()).unwrap().with_fixed_boundary();
    let out = run(&mut ns, &frame_times(0.0, 2.0, 0.5));
    for f in &out.frames {
        assert!(ke_residual(&su.grid, &f.lambda, &f.ricci, None) <= 1e-8);
    }
    assert!(ke_convergence_check(&su, &out.frames, Some(&g0), 0.9, 1e-8).satisfied);
}

#[test]
fn tracker_invariant_and_json() {
    let mut tr = SlackTracker::new("demo", 0.1);
    tr.push(0.5, &[(0.0, 0.0)], 0.0);
    tr.push(-0.05, &[(0.1, 0.0)], 1.0);
    let rep = tr.finish();
    assert!(rep.satisfied);
    assert_eq!(rep.worst_location.as_ref().unwrap().time, 1.0);
    let mut tr = SlackTracker::new("demo", 0.1);
    tr.push(f64::NAN, &[], 0.0);
    assert!(!tr.finish().satisfied);
    let json = serde_json::to_string(&rep).unwrap();
    let back: EstimateReport = serde_json::from_str(&json).unwrap();
    assert_eq!(back, rep);
    assert!(!EstimateReport::not_applicable("x", "broken run").satisfied);
}
