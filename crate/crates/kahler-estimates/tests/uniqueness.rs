use kahler_estimates::*;
use kahler_geometry::{Catalog64, C};

fn points() -> Vec<Vec<C<f64>>> {
    let mut pts = Vec::new();
    for i in 0..12 {
        for j in 0..6 {
            let r = 0.85 * (j as f64 + 0.5) / 6.0;
            let th = std::f64::consts::TAU * i as f64 / 12.0;
            pts.push(vec![C::from_polar(r, th)]);
        }
    }
    pts
}

#[test]
fn identical_inputs_give_zero() {
    let cat = Catalog64::standard();
    let ke = cat.build("poincare-ke", Some(1)).unwrap();
    let d = uniqueness_f_check(ke.as_ref(), ke.as_ref(), &points()).unwrap();
    assert!(d.f_field.iter().all(|&f| f == 0.0));
}

#[test]
fn mobius_pullback_is_the_same_metric() {
    let cat = Catalog64::standard();
    let ke = cat.build("poincare-ke", Some(1)).unwrap();
    let pulled = cat.build("mobius-pullback", Some(1)).unwrap();
    let d = uniqueness_f_check(ke.as_ref(), pulled.as_ref(), &points()).unwrap();
    assert!(d.sup_f.abs() <= 1e-10 && d.inf_f.abs() <= 1e-10, "{} {}", d.sup_f, d.inf_f);
    assert!(d.ke_residual <= KE_TOLERANCE);
    let swapped = uniqueness_f_check(pulled.as_ref(), ke.as_ref(), &points()).unwrap();
    for (a, b) in d.f_field.iter().zip(&swapped.f_field) {
        assert_eq!(*a, -*b);
    }
}

#[test]
fn swapping_negates_exactly_for_unrelated_metrics() {
    // Antisymmetry is structural; it does not need KE inputs to be equal.
    let cat = Catalog64::standard();
    let a = cat.build("poincare-ke", Some(1)).unwrap();
    let b = cat.build("mobius-pullback", Some(1)).unwrap();
    let pts = vec![vec![C::new(0.3, 0.4)], vec![C::new(-0.7, 0.1)]];
    let x = uniqueness_f_check(a.as_ref(), b.as_ref(), &pts).unwrap();
    let y = uniqueness_f_check(b.as_ref(), a.as_ref(), &pts).unwrap();
    assert!(x.f_field.iter().zip(&y.f_field).all(|(p, q)| *p == -*q));
}

#[test]
fn scaled_metric_is_rejected() {
    let cat = Catalog64::standard();
    let ke = cat.build("poincare-ke", Some(1)).unwrap();
    let doubled = cat.build("poincare-disk", Some(1)).unwrap(); // Ric = −2ω
    let err = uniqueness_f_check(ke.as_ref(), doubled.as_ref(), &points()).unwrap_err();
    assert!(matches!(err, UniquenessError::NotKahlerEinstein { which: 2, .. }));
}
