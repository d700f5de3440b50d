//! Central finite differences in the real coordinates x_a, y_a of z_a = x_a + i y_a.

use crate::error::GeomError;
use crate::jet::MetricJet;
use crate::linalg::CMat;
use crate::provider::{MetricProvider, SharedProvider};
use crate::scalar::{ci, cr, Real, C};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Stencil {
    /// 2 or 4.
    pub order: usize,
    pub step: f64,
}

impl Stencil {
    pub fn new(order: usize, step: f64) -> Result<Self, GeomError> {
        if order != 2 && order != 4 {
            return Err(GeomError::Precondition(format!("stencil order {order} (expected 2 or 4)")));
        }
        if !(step > 0.0) {
            return Err(GeomError::Precondition(format!("stencil step {step} must be positive")));
        }
        Ok(Stencil { order, step })
    }

    /// (offset, weight) pairs for d/dx, weights already divided by h.
    fn first<T: Real>(&self) -> Vec<(i32, T)> {
        let h = T::lit(self.step);
        let w: &[(i32, f64)] = match self.order {
            2 => &[(-1, -0.5), (1, 0.5)],
            _ => &[(-2, 1.0 / 12.0), (-1, -2.0 / 3.0), (1, 2.0 / 3.0), (2, -1.0 / 12.0)],
        };
        w.iter().map(|&(k, c)| (k, T::lit(c) / h)).collect()
    }

    fn second<T: Real>(&self) -> Vec<(i32, T)> {
        let h2 = T::lit(self.step * self.step);
        let w: &[(i32, f64)] = match self.order {
            2 => &[(-1, 1.0), (0, -2.0), (1, 1.0)],
            _ => &[
                (-2, -1.0 / 12.0),
                (-1, 4.0 / 3.0),
                (0, -2.5),
                (1, 4.0 / 3.0),
                (2, -1.0 / 12.0),
            ],
        };
        w.iter().map(|&(k, c)| (k, T::lit(c) / h2)).collect()
    }

    /// Largest coordinate offset the stencil touches.
    pub fn reach(&self) -> f64 {
        self.step * (self.order / 2) as f64
    }
}

/// Moves `z` by `t` along real coordinate `p` (even p: x_{p/2}, odd p: y_{p/2}).
fn shifted<T: Real>(z: &[C<T>], moves: &[(usize, T)]) -> Vec<C<T>> {
    let mut w = z.to_vec();
    for &(p, t) in moves {
        if p % 2 == 0 {
            w[p / 2].re += t;
        } else {
            w[p / 2].im += t;
        }
    }
    w
}

fn accumulate<T: Real>(acc: &mut Option<CMat<T>>, m: CMat<T>, w: T) {
    let term = m.scale_re(w);
    *acc = Some(match acc.take() {
        None => term,
        Some(a) => a.add(&term),
    });
}

/// ∂_a f for every a, for a matrix-valued function f.
pub fn wirtinger_first<T: Real>(
    f: &dyn Fn(&[C<T>]) -> CMat<T>,
    z: &[C<T>],
    s: &Stencil,
    dim: usize,
) -> Vec<CMat<T>> {
    let h = T::lit(s.step);
    let st = s.first::<T>();
    let n = z.len();
    let real = |p: usize| -> CMat<T> {
        let mut acc = None;
        for &(k, w) in &st {
            accumulate(&mut acc, f(&shifted(z, &[(p, h * T::lit(k as f64))])), w);
        }
        acc.unwrap_or_else(|| CMat::zeros(dim))
    };
    let half = T::lit(0.5);
    (0..n)
        .map(|a| {
            let dx = real(2 * a);
            let dy = real(2 * a + 1);
            dx.sub(&dy.scale(ci())).scale_re(half)
        })
        .collect()
}

/// ∂_a∂_b̄ f for every (a, b), index a * n + b.
pub fn wirtinger_mixed<T: Real>(
    f: &dyn Fn(&[C<T>]) -> CMat<T>,
    z: &[C<T>],
    s: &Stencil,
    dim: usize,
) -> Vec<CMat<T>> {
    let h = T::lit(s.step);
    let n = z.len();
    let d1 = s.first::<T>();
    let d2 = s.second::<T>();
    let real2 = |p: usize, q: usize| -> CMat<T> {
        let mut acc = None;
        if p == q {
            for &(k, w) in &d2 {
                accumulate(&mut acc, f(&shifted(z, &[(p, h * T::lit(k as f64))])), w);
            }
        } else {
            for &(k, wk) in &d1 {
                for &(l, wl) in &d1 {
                    let moves = [(p, h * T::lit(k as f64)), (q, h * T::lit(l as f64))];
                    accumulate(&mut acc, f(&shifted(z, &moves)), wk * wl);
                }
            }
        }
        acc.unwrap_or_else(|| CMat::zeros(dim))
    };
    let quarter = T::lit(0.25);
    let mut cache: Vec<Option<CMat<T>>> = vec![None; 4 * n * n];
    let mut get = |p: usize, q: usize| -> CMat<T> {
        let (p, q) = if p <= q { (p, q) } else { (q, p) };
        let idx = p * 2 * n + q;
        if cache[idx].is_none() {
            cache[idx] = Some(real2(p, q));
        }
        cache[idx].clone().unwrap()
    };
    let mut out = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let (xa, ya, xb, yb) = (2 * a, 2 * a + 1, 2 * b, 2 * b + 1);
            let re = get(xa, xb).add(&get(ya, yb));
            let m = if a == b {
                re
            } else {
                let im = get(xa, yb).sub(&get(ya, xb));
                re.add(&im.scale(ci()))
            };
            out.push(m.scale_re(quarter));
        }
    }
    out
}

/// What the stencil is applied to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Differencing {
    /// g itself; exact on metrics quadratic in the coordinates.
    Direct,
    /// g = w·ĝ with w = det(g)^{1/n}: differences log w and ĝ, then
    /// reassembles. Metrics blowing up like a power of a defining function
    /// (complete metrics near their ideal boundary) lose most of their
    /// steepness this way.
    LogScaled,
}

/// Derivatives of a wrapped provider's values by central differences.
///
/// Only `eval` of the wrapped provider is used, so this is an independent
/// route to every derivative an analytic provider also supplies.
pub struct FdProvider<T: Real> {
    pub base: SharedProvider<T>,
    pub stencil: Stencil,
    pub max_order: usize,
    pub differencing: Differencing,
}

impl<T: Real> FdProvider<T> {
    pub fn new(base: SharedProvider<T>, stencil: Stencil) -> Self {
        FdProvider { base, stencil, max_order: 2, differencing: Differencing::Direct }
    }

    pub fn with_differencing(mut self, d: Differencing) -> Self {
        self.differencing = d;
        self
    }

    fn log_scaled_jet(&self, z: &[C<T>], order: usize) -> MetricJet<T> {
        let n = self.dim();
        let inv_n = T::one() / T::from_usize_lossy(n);
        let split = |w: &[C<T>]| {
            let g = self.base.eval(w);
            let lw = g.det().re.ln() * inv_n;
            (lw, g.scale_re((-lw).exp()))
        };
        let lw_f = |w: &[C<T>]| CMat::scalar(cr(split(w).0));
        let gh_f = |w: &[C<T>]| split(w).1;
        let (l0, gh) = split(z);
        let w = l0.exp();
        let mut j = MetricJet::order0(self.base.eval(z));
        if order == 0 {
            return j;
        }
        let dl: Vec<C<T>> = wirtinger_first(&lw_f, z, &self.stencil, 1).into_iter().map(|m| m[(0, 0)]).collect();
        let dgh = wirtinger_first(&gh_f, z, &self.stencil, n);
        j.dg = (0..n).map(|a| gh.scale(dl[a]).add(&dgh[a]).scale_re(w)).collect();
        if order >= 2 {
            let ddl = wirtinger_mixed(&lw_f, z, &self.stencil, 1);
            let ddgh = wirtinger_mixed(&gh_f, z, &self.stencil, n);
            let mut ddg = Vec::with_capacity(n * n);
            for a in 0..n {
                for b in 0..n {
                    let lb = dl[b].conj();
                    // ∂̄_b ĝ = (∂_b ĝ)† for Hermitian ĝ.
                    let m = gh
                        .scale(ddl[a * n + b][(0, 0)] + dl[a] * lb)
                        .add(&dgh[b].adjoint().scale(dl[a]))
                        .add(&dgh[a].scale(lb))
                        .add(&ddgh[a * n + b]);
                    ddg.push(m.scale_re(w));
                }
            }
            j.ddg = ddg;
        }
        j
    }

    pub fn with_max_order(mut self, k: usize) -> Self {
        self.max_order = k.min(2);
        self
    }
}

impl<T: Real> MetricProvider<T> for FdProvider<T> {
    fn dim(&self) -> usize {
        self.base.dim()
    }

    fn label(&self) -> String {
        let tag = if self.differencing == Differencing::LogScaled { "log-" } else { "" };
        format!("{tag}fd{}({}, h={})", self.stencil.order, self.base.label(), self.stencil.step)
    }

    fn max_order(&self) -> usize {
        self.max_order
    }

    fn contains(&self, z: &[C<T>]) -> bool {
        let r = T::lit(self.stencil.reach());
        let n = z.len();
        (0..2 * n).all(|p| {
            self.base.contains(&shifted(z, &[(p, r)])) && self.base.contains(&shifted(z, &[(p, -r)]))
        }) && self.base.contains(z)
    }

    fn eval(&self, z: &[C<T>]) -> CMat<T> {
        self.base.eval(z)
    }

    fn jet_raw(&self, z: &[C<T>], order: usize) -> MetricJet<T> {
        if self.differencing == Differencing::LogScaled {
            return self.log_scaled_jet(z, order);
        }
        let n = self.dim();
        let f = |w: &[C<T>]| self.base.eval(w);
        let mut j = MetricJet::order0(self.base.eval(z));
        if order >= 1 {
            j.dg = wirtinger_first(&f, z, &self.stencil, n);
        }
        if order >= 2 {
            j.ddg = wirtinger_mixed(&f, z, &self.stencil, n);
        }
        j
    }
}

/// Scalar ∂_a∂_b̄ of a real function, as an n × n matrix.
pub fn scalar_ddbar<T: Real>(
    f: &dyn Fn(&[C<T>]) -> T,
    z: &[C<T>],
    s: &Stencil,
) -> CMat<T> {
    let n = z.len();
    let wrapped = |w: &[C<T>]| CMat::scalar(cr(f(w)));
    let mixed = wirtinger_mixed(&wrapped, z, s, 1);
    CMat::from_fn(n, |a, b| mixed[a * n + b][(0, 0)])
}

/// Scalar ∂_a of a real function.
pub fn scalar_d<T: Real>(f: &dyn Fn(&[C<T>]) -> T, z: &[C<T>], s: &Stencil) -> Vec<C<T>> {
    let wrapped = |w: &[C<T>]| CMat::scalar(cr(f(w)));
    wirtinger_first(&wrapped, z, s, 1).into_iter().map(|m| m[(0, 0)]).collect()
}
