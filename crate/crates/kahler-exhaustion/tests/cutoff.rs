use kahler_exhaustion::*;

fn cut(tau: f64) -> Cutoff64 {
    Cutoff64::new(CutoffSpec::new(tau)).unwrap()
}

#[test]
fn f_values() {
    let c = cut(0.1);
    for s in [0.0, 0.5, 0.9] {
        assert_eq!(c.f(s).unwrap(), 0.0);
    }
    assert!((c.f(0.95).unwrap() - (4.0f64 / 3.0).ln()).abs() < 1e-14);
    assert!(c.f(1.0 - 1e-12).unwrap() > 20.0);
    assert!(matches!(c.f(1.0), Err(CutoffError::Domain(_))));
    assert!(matches!(c.f(-0.1), Err(CutoffError::Domain(_))));
    let mut prev = 0.0;
    for j in 0..1000 {
        let v = c.f(0.999 * j as f64 / 999.0).unwrap();
        assert!(v >= prev);
        prev = v;
    }
}

#[test]
fn f_derivatives_match_differences() {
    let c = cut(0.05);
    for s in [0.96, 0.97, 0.99, 0.999] {
        let j = c.f_jet(s).unwrap();
        let e = 1e-7 * (1.0 - s);
        let (p, m) = (c.f_jet(s + e).unwrap(), c.f_jet(s - e).unwrap());
        for k in 0..4 {
            let fd = (p[k] - m[k]) / (2.0 * e);
            assert!((fd - j[k + 1]).abs() <= 1e-6 * j[k + 1].abs(), "s {s} k {k}: {fd} {}", j[k + 1]);
        }
    }
}

#[test]
fn switch_function() {
    for tau in [0.02, 0.05, 0.1] {
        let c = cut(tau);
        assert_eq!(c.phi_jet(c.start), [0.0; 4]);
        assert_eq!(c.phi_jet(c.start - 1e-3), [0.0; 4]);
        assert_eq!(c.phi_jet(c.end), [1.0, 0.0, 0.0, 0.0]);
        assert_eq!(c.phi_jet(0.999), [1.0, 0.0, 0.0, 0.0]);
        let n = 4000;
        let mut prev = 0.0;
        for j in 0..=n {
            let s = c.start + (c.end - c.start) * j as f64 / n as f64;
            let p = c.phi_jet(s);
            assert!(p[1] >= 0.0 && p[1] <= 2.0 / (tau * tau));
            assert!(p[0] >= prev - 1e-15 && (p[0] - prev).abs() < 1e-2);
            prev = p[0];
        }
        // the ramp of a plain degree-7 step would peak at 35/16 > 2
        assert!((c.phi_jet(0.5 * (c.start + c.end))[1] * tau * tau - 4.0 / 3.0).abs() < 1e-12);
    }
}

#[test]
fn frak_vanishes_up_to_switch_and_matches_quadrature() {
    let c = cut(0.1);
    assert_eq!(c.frak(c.start).unwrap(), 0.0);
    assert_eq!(c.frak(0.3).unwrap(), 0.0);
    for s in [0.93, 0.95, 0.98, 0.99] {
        let direct = c.integral(s);
        assert!(direct.converged);
        assert!((direct.value - c.frak(s).unwrap()).abs() < 1e-10, "s {s}");
    }
    let q = c.integral(0.9999);
    assert!((q.value - c.frak(0.9999).unwrap()).abs() <= 1e-10f64.max(10.0 * q.error));
    let mut prev = 0.0;
    for j in 0..2000 {
        let s = c.start + (0.9999 - c.start) * j as f64 / 1999.0;
        let j2 = c.frak_jet2(s).unwrap();
        assert!(j2[0] >= prev && j2[1] >= 0.0);
        prev = j2[0];
    }
}

#[test]
fn frak_derivatives_are_consistent() {
    for tau in [0.02, 0.05, 0.1] {
        let c = cut(tau);
        let sweep = profile_sweep(&c, 10_000);
        let (mut err, mut scale) = ([0.0f64; 2], [0.0f64; 2]);
        for &s in &sweep {
            let a = c.frak_fd34(s).unwrap();
            let b = c.frak_leibniz34(s).unwrap();
            for k in 0..2 {
                err[k] = err[k].max((a[k] - b[k]).abs());
                scale[k] = scale[k].max(b[k].abs());
            }
        }
        assert!(err[0] <= 1e-4 * scale[0] && err[1] <= 1e-4 * scale[1], "tau {tau}: {err:?} {scale:?}");
        // 𝔉″ against a difference of the closed-form 𝔉′
        for s in [c.start + 0.3 * tau * tau, 0.97, 0.995] {
            let e = 1e-6 * tau * tau;
            let fd = (c.frak_jet2(s + e).unwrap()[1] - c.frak_jet2(s - e).unwrap()[1]) / (2.0 * e);
            let an = c.frak_jet2(s).unwrap()[2];
            assert!((fd - an).abs() <= 1e-5 * an.abs().max(1.0));
        }
    }
}

#[test]
fn properties_hold_and_constants_match_limits() {
    for tau in [0.02, 0.05, 0.1] {
        let c = cut(tau);
        let rep = frak_properties_check(&c, 4, 10_000).unwrap();
        assert!(rep.satisfied, "{rep:?}");
        assert_eq!(rep.samples > 10_000, true);
        assert_eq!(rep.noted("zero_region_max"), Some(0.0));
        for k in 1..=4 {
            assert!(rep.noted(&format!("sup_k{k}")).unwrap().is_finite());
        }
        // Near s = 1, 𝔉 = const − log((1 − x)(1 + x)), so with radius τ(1 − s)/2
        // the ratio tends to (1 + τ/2)/(1 − τ/2) and r·e^{𝔉(s−r)}/τ² to
        // e^{𝔉(end) − f(end)}/(4(1 + τ/2)).
        let c2 = rep.noted("c2").unwrap();
        let c3 = rep.noted("c3").unwrap();
        assert!((c2 - 1.0 / (1.0 - tau / 2.0)).abs() < 1e-3 * c2);
        let lim3 = (c.plateau.value - c.f(c.end).unwrap()).exp() / (4.0 * (1.0 + tau / 2.0));
        assert!((c3 - lim3).abs() < 1e-3 * lim3, "{c3} {lim3}");
        let fine = ratio_constants(&c, 20_000).unwrap();
        assert!(((fine.c2 - c2) / c2).abs() < 0.1 && ((fine.c3 - c3) / c3).abs() < 0.1);
        assert!(fine.min_ratio >= 1.0);
    }
}

#[test]
fn quadrature() {
    let q = integrate(|x: f64| x.sin(), 0.0, std::f64::consts::PI, 1e-13, 100);
    assert!(q.converged && (q.value - 2.0).abs() < 1e-13);
    let q = integrate(|x: f64| 3.0 * x * x, -1.0, 2.0, 1e-13, 1);
    assert!((q.value - 9.0).abs() < 1e-13);
    let hard = integrate(|x: f64| (1.0 / x).sin(), 1e-4, 1.0, 1e-14, 3);
    assert!(!hard.converged && hard.error > 1e-14);
}

#[test]
fn spec_validation() {
    assert!(matches!(Cutoff64::new(CutoffSpec::new(0.2)), Err(CutoffError::Tau(_))));
    assert!(matches!(Cutoff64::new(CutoffSpec::new(0.0)), Err(CutoffError::Tau(_))));
    let mut s = CutoffSpec::new(0.1);
    s.mollifier_width = 0.7;
    assert!(matches!(Cutoff64::new(s), Err(CutoffError::Mollifier(_))));
    s.mollifier_width = 0.25;
    s.quad_resolution = 0;
    assert!(matches!(Cutoff64::new(s), Err(CutoffError::Resolution)));
}

#[test]
fn profile_csv() {
    let c = cut(0.1);
    let rows = profile_rows(&c, 50).unwrap();
    let mut buf = Vec::new();
    write_profile_csv(&rows, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "s,f,phi,frak,frak_prime");
    assert_eq!(lines.len(), 51);
}

#[test]
fn single_precision() {
    let c = Cutoff::<f32>::new(CutoffSpec::new(0.1)).unwrap();
    assert_eq!(c.frak(0.5).unwrap(), 0.0);
    assert!((c.f(0.95).unwrap() - (4.0f32 / 3.0).ln()).abs() < 1e-6);
}
