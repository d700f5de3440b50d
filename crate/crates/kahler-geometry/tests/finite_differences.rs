use kahler_geometry::models::{BergmanBall, QuadraticMetric, RadialN1, TorsionExample};
use kahler_geometry::{chern_curvature, jet, Differencing, FdProvider, GeomError, MetricProvider, Provider64, Stencil, C};
use std::sync::Arc;

fn curvature_error(base: &Provider64, z: &[C<f64>], st: Stencil) -> f64 {
    let exact = chern_curvature(base, z).unwrap().curvature.unwrap();
    let fd = FdProvider::new(base.clone(), st);
    let approx = chern_curvature(&fd, z).unwrap().curvature.unwrap();
    exact.data.iter().zip(&approx.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
}

#[test]
fn halving_step_reduces_error_at_nominal_order() {
    let cases: Vec<(Provider64, Vec<C<f64>>)> = vec![
        (Arc::new(RadialN1::poincare(1.0)), vec![C::new(0.3, 0.2)]),
        (Arc::new(BergmanBall { n: 2 }), vec![C::new(0.2, -0.1), C::new(0.1, 0.3)]),
        (Arc::new(TorsionExample), vec![C::new(0.5, -0.4), C::new(1.0, 0.2)]),
    ];
    for (order, h) in [(2usize, 0.02), (4, 0.04)] {
        for (p, z) in &cases {
            let e1 = curvature_error(p, z, Stencil::new(order, h).unwrap());
            let e2 = curvature_error(p, z, Stencil::new(order, h / 2.0).unwrap());
            if e1 < 1e-11 {
                continue; // exact for polynomial metrics
            }
            let ratio = e1 / e2;
            assert!(ratio >= 2f64.powf(order as f64 - 0.5), "{} order {order}: ratio {ratio}", p.label());
        }
    }
}

#[test]
fn fd_matches_analytic_jets_for_quadratic_metric() {
    // second-order polynomial entries: the 4th-order stencil is exact up to roundoff
    let g = QuadraticMetric::<f64>::random(3, 0.3, 9);
    let z = [C::new(0.1, 0.1), C::new(-0.2, 0.0), C::new(0.0, 0.15)];
    let fd = FdProvider::new(Arc::new(g.clone()), Stencil::new(4, 1e-2).unwrap());
    let a = jet(&g, &z, 2).unwrap();
    let b = jet(&fd, &z, 2).unwrap();
    for k in 0..3 {
        assert!(a.d(k).sub(b.d(k)).max_abs() < 1e-10);
        for l in 0..3 {
            assert!(a.dd(k, l).sub(b.dd(k, l)).max_abs() < 1e-8);
        }
    }
}

#[test]
fn order_limited_backend_fails_fast() {
    let fd = FdProvider::new(Arc::new(TorsionExample), Stencil::new(2, 1e-3).unwrap()).with_max_order(1);
    let z = [C::new(0.0, 0.0); 2];
    assert!(kahler_geometry::chern_connection(&fd, &z).is_ok());
    match chern_curvature(&fd, &z) {
        Err(GeomError::DerivativeOrder { needed: 2, available: 1, .. }) => {}
        other => panic!("expected order error, got {other:?}"),
    }
    assert!(kahler_geometry::kahler_identity_residual(&fd, &z).is_err());
    assert!(kahler_geometry::nabla_bar_torsion_norm(&fd, &z, &Default::default()).is_err());
}

#[test]
fn stencil_validation() {
    assert!(Stencil::new(3, 1e-3).is_err());
    assert!(Stencil::new(4, 0.0).is_err());
    assert!(Stencil::new(2, 1e-3).is_ok());
}

#[test]
fn fd_chart_respects_stencil_reach() {
    let fd = FdProvider::new(Arc::new(RadialN1::<f64>::poincare(1.0)), Stencil::new(4, 1e-2).unwrap());
    assert!(fd.contains(&[C::new(0.97, 0.0)]));
    assert!(!fd.contains(&[C::new(0.985, 0.0)]));
}

fn jet_gap(a: &kahler_geometry::MetricJet<f64>, b: &kahler_geometry::MetricJet<f64>, n: usize) -> (f64, f64) {
    let mut d1 = 0.0f64;
    let mut d2 = 0.0f64;
    for k in 0..n {
        d1 = d1.max(a.d(k).sub(b.d(k)).max_abs());
        for l in 0..n {
            d2 = d2.max(a.dd(k, l).sub(b.dd(k, l)).max_abs());
        }
    }
    (d1, d2)
}

#[test]
fn log_scaled_jets_match_analytic_jets() {
    let cases: Vec<(Provider64, Vec<C<f64>>)> = vec![
        (Arc::new(BergmanBall { n: 2 }), vec![C::new(0.2, -0.1), C::new(0.1, 0.3)]),
        (Arc::new(TorsionExample), vec![C::new(0.5, -0.4), C::new(1.0, 0.2)]),
        (Arc::new(QuadraticMetric::<f64>::random(3, 0.3, 9)), vec![C::new(0.1, 0.1), C::new(-0.2, 0.0), C::new(0.0, 0.15)]),
    ];
    for (p, z) in &cases {
        let fd = FdProvider::new(p.clone(), Stencil::new(4, 1e-3).unwrap()).with_differencing(Differencing::LogScaled);
        let (d1, d2) = jet_gap(&jet(p.as_ref(), z, 2).unwrap(), &jet(&fd, z, 2).unwrap(), p.dim());
        assert!(d1 < 1e-9 && d2 < 1e-6, "{}: {d1:e} {d2:e}", fd.label());
    }
}

#[test]
fn log_scaling_helps_near_the_ideal_boundary() {
    let p: Provider64 = Arc::new(RadialN1::poincare(1.0));
    let z = [C::new(0.95, 0.0)];
    let st = Stencil::new(4, 1e-3).unwrap();
    let err = |fd: FdProvider<f64>| (chern_curvature(&fd, &z).unwrap().scalar.unwrap() + 2.0).abs();
    let direct = err(FdProvider::new(p.clone(), st));
    let scaled = err(FdProvider::new(p.clone(), st).with_differencing(Differencing::LogScaled));
    assert!(scaled < 1e-6 && scaled * 5.0 < direct, "{scaled:e} vs {direct:e}");
}
