//! Conformal rescaling e^{2F} g with derivatives assembled by the product rule,
//! plus the closed-form transformation laws used to cross-check it.

use crate::field::{ScalarJet, SharedField};
use crate::jet::MetricJet;
use crate::linalg::CMat;
use crate::provider::{MetricProvider, SharedProvider};
use crate::scalar::{cr, Real, C};
use crate::tensor::{Tensor3, Tensor4};

pub struct ConformalProvider<T: Real> {
    pub base: SharedProvider<T>,
    pub factor: SharedField<T>,
}

impl<T: Real> ConformalProvider<T> {
    pub fn new(base: SharedProvider<T>, factor: SharedField<T>) -> Self {
        ConformalProvider { base, factor }
    }
}

/// Jet of e^{2F} g from jets of g and F.
pub fn conformal_jet<T: Real>(g: &MetricJet<T>, f: &ScalarJet<T>, order: usize) -> MetricJet<T> {
    let n = g.dim();
    let e = (T::lit(2.0) * f.f).exp();
    let two = cr(T::lit(2.0));
    let four = cr(T::lit(4.0));
    let mut out = MetricJet::order0(g.g.scale_re(e));
    if order >= 1 {
        out.dg = (0..n)
            .map(|a| g.g.scale(two * f.df[a]).add(g.d(a)).scale_re(e))
            .collect();
    }
    if order >= 2 {
        let mut ddg = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let fa = f.df[a];
                let fbb = f.df[b].conj();
                let m = g
                    .g
                    .scale(four * fa * fbb + two * f.ddf[(a, b)])
                    .add(&g.dbar(b).scale(two * fa))
                    .add(&g.d(a).scale(two * fbb))
                    .add(g.dd(a, b));
                ddg.push(m.scale_re(e));
            }
        }
        out.ddg = ddg;
    }
    out
}

impl<T: Real> MetricProvider<T> for ConformalProvider<T> {
    fn dim(&self) -> usize {
        self.base.dim()
    }
    fn label(&self) -> String {
        format!("conformal:{}:{}", self.base.label(), self.factor.label())
    }
    fn max_order(&self) -> usize {
        self.base.max_order().min(2)
    }
    fn contains(&self, z: &[C<T>]) -> bool {
        self.base.contains(z)
    }
    fn eval(&self, z: &[C<T>]) -> CMat<T> {
        let f = self.factor.value(z);
        self.base.eval(z).scale_re((T::lit(2.0) * f).exp())
    }
    fn jet_raw(&self, z: &[C<T>], order: usize) -> MetricJet<T> {
        let g = self.base.jet_raw(z, order);
        let f = self.factor.jet(z);
        conformal_jet(&g, &f, order)
    }
}

/// Torsion of e^{2F} g from the law
/// T̂_{pkq̄} = e^{2F}[2(F_p g_{kq̄} − F_k g_{pq̄}) + T_{pkq̄}].
pub fn conformal_torsion_law<T: Real>(
    g: &CMat<T>,
    base_torsion: &Tensor3<T>,
    f: &ScalarJet<T>,
) -> Tensor3<T> {
    let n = g.dim();
    let e = (T::lit(2.0) * f.f).exp();
    let two = T::lit(2.0);
    Tensor3::from_fn(n, |p, k, q| {
        ((f.df[p] * g[(k, q)] - f.df[k] * g[(p, q)]) * two + base_torsion.get(p, k, q)) * e
    })
}

/// Chern curvature of e^{2F} g from the law
/// R̂_{ij̄kl̄} = e^{2F}(R_{ij̄kl̄} − 2 F_{ij̄} g_{kl̄}).
pub fn conformal_curvature_law<T: Real>(
    g: &CMat<T>,
    base_curvature: &Tensor4<T>,
    f: &ScalarJet<T>,
) -> Tensor4<T> {
    let n = g.dim();
    let e = (T::lit(2.0) * f.f).exp();
    let two = T::lit(2.0);
    Tensor4::from_fn(n, |i, j, k, l| (base_curvature.get(i, j, k, l) - f.ddf[(i, j)] * g[(k, l)] * two) * e)
}
