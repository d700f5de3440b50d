use kahler_geometry::linalg::CMat;
use kahler_geometry::models::ConstantMetric;
use kahler_geometry::{chern_curvature, metric_at, Catalog64, GeomError, C};

#[test]
fn standard_keys_resolve() {
    let c = Catalog64::standard();
    for key in ["euclidean", "poincare-disk", "bergman-ball", "torsion-example-1", "conformal:bergman-ball:bump"] {
        assert!(c.contains(key), "{key}");
        let p = c.build(key, None).unwrap();
        let z = vec![C::new(0.1, 0.05); p.dim()];
        chern_curvature(&p, &z).unwrap();
    }
    let names = c.metric_names();
    assert!(names.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn unknown_keys_are_named() {
    let c = Catalog64::standard();
    assert_eq!(c.build("no-such-metric", None).err(), Some(GeomError::UnknownKey("no-such-metric".into())));
    assert_eq!(c.build("conformal:euclidean:nope", None).err(), Some(GeomError::UnknownKey("nope".into())));
    assert!(!c.contains("conformal:euclidean"));
}

#[test]
fn fixed_dimension_entries_reject_other_dimensions() {
    let c = Catalog64::standard();
    assert!(matches!(
        c.build("torsion-example-1", Some(3)),
        Err(GeomError::DimensionMismatch { expected: 2, found: 3 })
    ));
    assert_eq!(c.build("euclidean", Some(4)).unwrap().dim(), 4);
}

#[test]
fn degenerate_and_out_of_chart_points_are_errors() {
    let c = Catalog64::standard();
    let p = c.build("poincare-disk", None).unwrap();
    assert!(matches!(chern_curvature(&p, &[C::new(1.0, 0.0)]), Err(GeomError::OutsideChart { .. })));
    assert!(matches!(chern_curvature(&p, &[C::new(0.1, 0.0), C::new(0.0, 0.0)]), Err(GeomError::DimensionMismatch { .. })));
    let mut g = CMat::identity(2);
    g[(1, 1)] = C::new(1e-14, 0.0);
    assert!(matches!(metric_at(&ConstantMetric { g }, &[C::new(0.0, 0.0); 2]), Err(GeomError::Degenerate { .. })));
    let mut g = CMat::identity(2);
    g[(0, 1)] = C::new(0.1, 0.0);
    assert!(matches!(metric_at(&ConstantMetric { g }, &[C::new(0.0, 0.0); 2]), Err(GeomError::NotHermitian { .. })));
}

#[test]
fn records_serialize() {
    let c = Catalog64::standard();
    let p = chern_curvature(&c.build("torsion-example-1", None).unwrap(), &[C::new(0.5, 0.0), C::new(0.0, 0.0)]).unwrap();
    let recs = p.records();
    assert_eq!(recs.iter().filter(|r| r.tensor == "curvature").count(), 16);
    let s = serde_json::to_string(&recs[0]).unwrap();
    assert!(s.contains("\"re\""));
}

#[test]
fn single_precision_instantiation() {
    let c = kahler_geometry::Catalog::<f32>::standard();
    let p = c.build("poincare-disk", None).unwrap();
    let pk = chern_curvature(&p, &[C::new(0.5f32, 0.0)]).unwrap();
    assert!((pk.scalar.unwrap() + 2.0).abs() < 1e-4);
}
