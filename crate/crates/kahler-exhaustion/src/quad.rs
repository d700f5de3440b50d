//! Adaptive 15-point Gauss–Kronrod quadrature.

use kahler_geometry::Real;

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
/// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadResult<T> {
    pub value: T,
    /// Sum of |Kronrod − Gauss| over the final panels.
    pub error: T,
    pub panels: usize,
    pub converged: bool,
}

fn panel<T: Real>(f: &impl Fn(T) -> T, a: T, b: T) -> (T, T) {
    let half = T::lit(0.5);
    let c = (a + b) * half;
    let r = (b - a) * half;
    let fc = f(c);
    let mut k = fc * T::lit(WGK[7]);
    let mut g = fc * T::lit(WG[3]);
    for i in 0..7 {
        let dx = r * T::lit(XGK[i]);
        let s = f(c - dx) + f(c + dx);
        k += s * T::lit(WGK[i]);
        if i % 2 == 1 {
            g += s * T::lit(WG[i / 2]);
        }
    }
    (k * r, (k - g).abs() * r)
}

/// ∫_a^b f, bisecting the panel with the largest error until the total
/// error is below `tol` or `max_panels` is reached.
pub fn integrate<T: Real>(f: impl Fn(T) -> T, a: T, b: T, tol: T, max_panels: usize) -> QuadResult<T> {
    if a == b {
        return QuadResult { value: T::zero(), error: T::zero(), panels: 0, converged: true };
    }
    let (v, e) = panel(&f, a, b);
    let mut panels = vec![(a, b, v, e)];
    loop {
        let error = panels.iter().fold(T::zero(), |s, p| s + p.3);
        let value = panels.iter().fold(T::zero(), |s, p| s + p.2);
        if error <= tol || panels.len() >= max_panels.max(1) {
            return QuadResult { value, error, panels: panels.len(), converged: error <= tol };
        }
        let (worst, _) = panels
            .iter()
            .enumerate()
            .fold((0, T::neg_infinity()), |acc, (i, p)| if p.3 > acc.1 { (i, p.3) } else { acc });
        let (pa, pb, _, _) = panels.swap_remove(worst);
        let mid = (pa + pb) * T::lit(0.5);
        if mid <= pa || mid >= pb {
            return QuadResult { value, error, panels: panels.len() + 1, converged: false };
        }
        for (x, y) in [(pa, mid), (mid, pb)] {
            let (v, e) = panel(&f, x, y);
            panels.push((x, y, v, e));
        }
    }
}
