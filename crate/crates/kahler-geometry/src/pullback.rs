//! Pullback of a one-variable metric by a disk automorphism.

use crate::jet::MetricJet;
use crate::linalg::CMat;
use crate::provider::{MetricProvider, SharedProvider};
use crate::scalar::{cr, Real, C};

/// λ(φ(z))|φ′(z)|² for the Möbius map φ(z) = (z − a)/(1 − āz).
pub struct MobiusPullback<T: Real> {
    pub base: SharedProvider<T>,
    pub a: C<T>,
}

impl<T: Real> MobiusPullback<T> {
    /// (φ, φ′, φ″) at z.
    pub fn map(&self, z: C<T>) -> (C<T>, C<T>, C<T>) {
        let one = cr(T::one());
        let den = one - self.a.conj() * z;
        let k = one - cr(self.a.norm_sqr());
        let phi = (z - self.a) / den;
        let d1 = k / (den * den);
        let d2 = self.a.conj() * k * T::lit(2.0) / (den * den * den);
        (phi, d1, d2)
    }
}

impl<T: Real> MetricProvider<T> for MobiusPullback<T> {
    fn dim(&self) -> usize {
        1
    }
    fn label(&self) -> String {
        format!("mobius-pullback({},{}+{}i)", self.base.label(), self.a.re, self.a.im)
    }
    fn max_order(&self) -> usize {
        self.base.max_order().min(2)
    }
    fn contains(&self, z: &[C<T>]) -> bool {
        z[0].norm_sqr() < T::one() && self.base.contains(&[self.map(z[0]).0])
    }
    fn eval(&self, z: &[C<T>]) -> CMat<T> {
        let (w, d1, _) = self.map(z[0]);
        self.base.eval(&[w]).scale_re(d1.norm_sqr())
    }
    fn jet_raw(&self, z: &[C<T>], order: usize) -> MetricJet<T> {
        let (w, p1, p2) = self.map(z[0]);
        let b = self.base.jet_raw(&[w], order);
        let lam = b.g[(0, 0)].re;
        let m = p1.norm_sqr();
        let mut j = MetricJet::order0(CMat::scalar(cr(lam * m)));
        if order >= 1 {
            let lw = b.dg[0][(0, 0)];
            j.dg = vec![CMat::scalar(lw * p1 * m + p2 * p1.conj() * lam)];
            if order >= 2 {
                let lww = b.ddg[0][(0, 0)].re;
                let v = cr(lww * m * m)
                    + lw * p1 * p1 * p2.conj()
                    + lw.conj() * p2 * p1.conj() * p1.conj()
                    + cr(lam * p2.norm_sqr());
                j.ddg = vec![CMat::scalar(v)];
            }
        }
        j
    }
}
