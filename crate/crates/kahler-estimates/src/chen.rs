//! ODE majorant q' = −αq² + β and the bound t·q ≤ (1 + √(1 + 4αβT²))/(2α) on (0, T].

use kahler_geometry::Real;
use serde::Serialize;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ChenOutcome {
    pub sup_tq: f64,
    pub bound: f64,
    pub slack: f64,
    pub steps: usize,
}

pub fn chen_bound(alpha: f64, beta: f64, horizon: f64) -> f64 {
    (1.0 + (1.0 + 4.0 * alpha * beta * horizon * horizon).sqrt()) / (2.0 * alpha)
}

/// Closed-form solution, used as an independent oracle in tests.
pub fn riccati_exact(alpha: f64, beta: f64, q0: f64, t: f64) -> f64 {
    if beta == 0.0 {
        return q0 / (1.0 + alpha * q0 * t);
    }
    let c = (beta / alpha).sqrt();
    let th = ((alpha * beta).sqrt() * t).tanh();
    c * (q0 + c * th) / (c + q0 * th)
}

// Dormand–Prince 5(4) tableau.
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const B5: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];
const C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];

/// Adaptive Dormand–Prince integration of a scalar ODE on [0, horizon],
/// calling `visit(t, y)` at every accepted node (including t = 0).
pub fn integrate<T: Real>(
    f: impl Fn(T, T) -> T,
    y0: T,
    horizon: T,
    rtol: T,
    max_step: T,
    mut visit: impl FnMut(T, T),
) -> usize {
    let mut t = T::zero();
    let mut y = y0;
    let mut h = (horizon * T::lit(1e-6)).min(max_step);
    let mut steps = 0;
    visit(t, y);
    while t < horizon {
        h = h.min(horizon - t).min(max_step);
        let mut k = [T::zero(); 7];
        for s in 0..7 {
            let mut yi = y;
            for (j, kj) in k.iter().enumerate().take(s) {
                yi += h * T::lit(A[s][j]) * *kj;
            }
            k[s] = f(t + T::lit(C[s]) * h, yi);
        }
        let mut y5 = y;
        let mut y4 = y;
        for s in 0..7 {
            y5 += h * T::lit(B5[s]) * k[s];
            y4 += h * T::lit(B4[s]) * k[s];
        }
        let scale = rtol * (T::one() + y.abs().max(y5.abs()));
        let err = (y5 - y4).abs() / scale;
        if err <= T::one() || h <= T::lit(1e-14) * horizon {
            t += h;
            y = y5;
            steps += 1;
            visit(t, y);
        }
        let grow = if err > T::zero() { T::lit(0.9) * err.powf(T::lit(-0.2)) } else { T::lit(5.0) };
        h = h * grow.max(T::lit(0.2)).min(T::lit(5.0));
    }
    steps
}

/// sup over (0, T] of t·q(t) for q' = −αq² + β, q(0) = q₀.
pub fn chen_ode_oracle(alpha: f64, beta: f64, horizon: f64, q0: f64) -> ChenOutcome {
    assert!(alpha > 0.0 && beta >= 0.0 && horizon > 0.0, "need α > 0, β ≥ 0, T > 0");
    let mut sup = f64::NEG_INFINITY;
    let steps = integrate(
        |_, q: f64| -alpha * q * q + beta,
        q0,
        horizon,
        1e-12,
        horizon / 400.0,
        |t, q| {
            if t > 0.0 {
                sup = sup.max(t * q);
            }
        },
    );
    let bound = chen_bound(alpha, beta, horizon);
    ChenOutcome { sup_tq: sup, bound, slack: bound - sup, steps }
}

/// (α, β, T) triples of the standard 5×5×5 sweep and the q₀ decades.
pub fn standard_sweep() -> (Vec<(f64, f64, f64)>, Vec<f64>) {
    let alphas = [0.1, 0.1f64.powf(0.5), 1.0, 10f64.powf(0.5), 10.0];
    let betas = [0.0, 2.5, 5.0, 7.5, 10.0];
    let horizons = [0.1, 0.575, 1.05, 1.525, 2.0];
    let mut triples = Vec::new();
    for &a in &alphas {
        for &b in &betas {
            for &t in &horizons {
                triples.push((a, b, t));
            }
        }
    }
    (triples, vec![0.1, 1.0, 10.0, 100.0, 1000.0])
}
