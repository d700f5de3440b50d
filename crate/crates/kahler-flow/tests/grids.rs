use kahler_flow::{Grid, GridError, GridKind};

fn max_err(grid: &Grid<f64>, got: &[f64], want: impl Fn(usize) -> f64) -> f64 {
    grid.active_indices().map(|i| (got[i] - want(i)).abs()).fold(0.0, f64::max)
}

#[test]
fn laplacian_exact_on_quadratics() {
    let r = Grid::<f64>::radial(33, 0.9).unwrap();
    let u: Vec<f64> = r.points.iter().map(|z| z.norm_sqr()).collect();
    assert!(max_err(&r, &r.laplacian(&u), |_| 4.0) < 1e-9);

    let d = Grid::<f64>::disk(16, 0.9).unwrap();
    let u: Vec<f64> = d.points.iter().map(|z| 3.0 * z.re * z.re - z.im * z.im + z.re * z.im).collect();
    assert!(max_err(&d, &d.laplacian(&u), |_| 4.0) < 1e-9);
}

#[test]
fn radial_origin_row_sees_even_extension() {
    // r⁴ has Δ = 16r²; at the origin the stencil gives 4h²·h⁻² = 4h² → 0 at second order.
    for pts in [17usize, 33, 65] {
        let g = Grid::<f64>::radial(pts, 0.9).unwrap();
        let u: Vec<f64> = g.points.iter().map(|z| z.norm_sqr().powi(2)).collect();
        let lap = g.laplacian(&u);
        let h = g.step;
        assert!((lap[0] - 4.0 * h * h).abs() < 1e-12);
    }
}

#[test]
fn torus_laplacian_converges_at_second_order() {
    let mut errs = Vec::new();
    for side in [16usize, 32, 64] {
        let g = Grid::<f64>::torus(side, std::f64::consts::TAU).unwrap();
        let u: Vec<f64> = g.points.iter().map(|z| z.re.sin() * (2.0 * z.im).cos()).collect();
        let lap = g.laplacian(&u);
        errs.push(max_err(&g, &lap, |i| -5.0 * u[i]));
    }
    for w in errs.windows(2) {
        let rate = (w[0] / w[1]).log2();
        assert!(rate > 1.9, "rate {rate}, errors {errs:?}");
    }
}

#[test]
fn wirtinger_derivative_of_modulus_squared() {
    let r = Grid::<f64>::radial(33, 0.9).unwrap();
    let u: Vec<f64> = r.points.iter().map(|z| z.norm_sqr()).collect();
    let d = r.dz(&u);
    for i in r.active_indices().skip(1) {
        assert!((d[i] - r.points[i].conj()).norm() < 1e-12);
    }
    let t = Grid::<f64>::disk(12, 0.8).unwrap();
    let u: Vec<f64> = t.points.iter().map(|z| z.norm_sqr()).collect();
    let d = t.dz(&u);
    for i in t.active_indices() {
        assert!((d[i] - t.points[i].conj()).norm() < 1e-12);
    }
}

#[test]
fn boundary_layout() {
    let r = Grid::<f64>::radial(20, 0.9).unwrap();
    assert_eq!(r.kind, GridKind::Radial);
    assert_eq!(r.boundary_indices().collect::<Vec<_>>(), vec![19]);
    assert!(r.laplacian(&vec![1.0; 20]).iter().all(|v| v.abs() < 1e-9));

    let d = Grid::<f64>::disk(10, 0.9).unwrap();
    for i in d.boundary_indices() {
        assert!(d.radius(i) >= 0.9 - 1e-12 && d.radius(i) < 0.9 + 2.0 * d.step);
    }
    for i in d.active_indices() {
        assert!(d.radius(i) < 0.9);
    }
    let t = Grid::<f64>::torus(8, 1.0).unwrap();
    assert_eq!(t.boundary_indices().count(), 0);
}

#[test]
fn resolution_and_extent_are_validated() {
    assert_eq!(Grid::<f64>::radial(7, 0.9).unwrap_err(), GridError::Resolution(7));
    assert_eq!(Grid::<f64>::torus(4, 1.0).unwrap_err(), GridError::Resolution(4));
    assert!(matches!(Grid::<f64>::disk(10, 1.2), Err(GridError::Extent(_))));
    assert!(matches!(Grid::<f64>::torus(10, -1.0), Err(GridError::Extent(_))));
}
