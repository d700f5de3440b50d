use kahler_geometry::models::{BergmanBall, RadialN1, Scaled};
use kahler_geometry::sampling::Sampler;
use kahler_geometry::{royden_check, CMat, GeomError, SamplerConfig, C};
use std::sync::Arc;

fn random_positive(s: &mut Sampler, n: usize) -> CMat<f64> {
    let a = CMat::from_fn(n, |_, _| s.complex_gauss::<f64>());
    a.matmul(&a.adjoint()).add(&CMat::identity(n).scale_re(0.05))
}

#[test]
fn poincare_against_itself_is_sharp() {
    let h = RadialN1::<f64>::poincare(1.0);
    for r in [0.0, 0.5, 0.9] {
        let z = [C::new(r, 0.0)];
        let g = kahler_geometry::metric_at(&h, &z).unwrap();
        let rep = royden_check(&g, &h, &z, -2.0, &SamplerConfig::default()).unwrap();
        assert!((rep.lhs + 2.0).abs() < 1e-10);
        assert!((rep.rhs + 2.0).abs() < 1e-10);
        assert!(rep.slack.abs() < 1e-10);
    }
}

#[test]
fn scaling_g_scales_both_sides_by_inverse_square() {
    let h = BergmanBall { n: 2 };
    let z = [C::new(0.2, 0.1), C::new(0.0, -0.3)];
    let mut s = Sampler::new(8);
    let g = random_positive(&mut s, 2);
    let cfg = SamplerConfig::default();
    let a = royden_check(&g, &h, &z, -2.0, &cfg).unwrap();
    let c = 2.5;
    let b = royden_check(&g.scale_re(c), &h, &z, -2.0, &cfg).unwrap();
    assert!((b.lhs - a.lhs / (c * c)).abs() < 1e-10 * a.lhs.abs());
    assert!((b.rhs - a.rhs / (c * c)).abs() < 1e-10 * a.rhs.abs());
    assert_eq!(a.slack >= 0.0, b.slack >= 0.0);
}

#[test]
fn random_metrics_against_bergman_ball() {
    let h = BergmanBall { n: 2 };
    let mut s = Sampler::new(21);
    let cfg = SamplerConfig { directions: 512, frames: 16, ..Default::default() };
    for _ in 0..200 {
        let r = 0.9 * s.gauss::<f64>().abs().min(1.0);
        let z: Vec<C<f64>> = s.sphere::<f64>(2).into_iter().map(|w| w * r).collect();
        let g = random_positive(&mut s, 2);
        let rep = royden_check(&g, &h, &z, -2.0, &cfg).unwrap();
        assert!(rep.slack >= -1e-8 * rep.lhs.abs().max(1.0), "slack {}", rep.slack);
    }
}

#[test]
fn kappa_above_kappa0_is_a_precondition_error() {
    let h = Scaled { base: Arc::new(BergmanBall { n: 2 }), c: 1.0 };
    let z = [C::new(0.1, 0.0), C::new(0.0, 0.0)];
    let g = CMat::identity(2);
    match royden_check(&g, &h, &z, -3.0, &SamplerConfig::default()) {
        Err(GeomError::Precondition(_)) => {}
        other => panic!("{other:?}"),
    }
}
