//! Closed-form metrics with hand-derived derivatives.

use crate::jet::MetricJet;
use crate::linalg::CMat;
use crate::provider::{MetricProvider, SharedProvider};
use crate::scalar::{cr, cz, norm_sqr, Real, C};
use std::sync::Arc;

/// Flat metric δ_{ij} on ℂⁿ.
#[derive(Clone, Debug)]
pub struct Euclidean {
    pub n: usize,
}

impl<T: Real> MetricProvider<T> for Euclidean {
    fn dim(&self) -> usize {
        self.n
    }
    fn label(&self) -> String {
        "euclidean".into()
    }
    fn max_order(&self) -> usize {
        2
    }
    fn eval(&self, _z: &[C<T>]) -> CMat<T> {
        CMat::identity(self.n)
    }
    fn jet_raw(&self, _z: &[C<T>], order: usize) -> MetricJet<T> {
        let n = self.n;
        let mut j = MetricJet::order0(CMat::identity(n));
        if order >= 1 {
            j.dg = vec![CMat::zeros(n); n];
        }
        if order >= 2 {
            j.ddg = vec![CMat::zeros(n); n * n];
        }
        j
    }
}

/// Coordinate-independent metric value; all derivatives vanish.
#[derive(Clone, Debug)]
pub struct ConstantMetric<T> {
    pub g: CMat<T>,
}

impl<T: Real> MetricProvider<T> for ConstantMetric<T> {
    fn dim(&self) -> usize {
        self.g.dim()
    }
    fn label(&self) -> String {
        "constant".into()
    }
    fn max_order(&self) -> usize {
        2
    }
    fn eval(&self, _z: &[C<T>]) -> CMat<T> {
        self.g.clone()
    }
    fn jet_raw(&self, _z: &[C<T>], order: usize) -> MetricJet<T> {
        let n = self.g.dim();
        let mut j = MetricJet::order0(self.g.clone());
        if order >= 1 {
            j.dg = vec![CMat::zeros(n); n];
        }
        if order >= 2 {
            j.ddg = vec![CMat::zeros(n); n * n];
        }
        j
    }
}

/// Profile of a rotationally invariant metric on one complex variable,
/// written in ρ = |z|²: returns (Λ, dΛ/dρ, d²Λ/dρ²).
pub type RadialProfile<T> = Arc<dyn Fn(T) -> (T, T, T) + Send + Sync>;

/// g = Λ(|z|²) |dz|² on a disk or the plane.
#[derive(Clone)]
pub struct RadialN1<T> {
    pub label: String,
    pub profile: RadialProfile<T>,
    /// Chart is |z| < radius when set.
    pub radius: Option<T>,
}

impl<T: Real> RadialN1<T> {
    /// Poincaré metric c·(1 − |z|²)⁻² on the unit disk.
    pub fn poincare(c: T) -> Self {
        let label = if c == T::one() {
            "poincare-disk".to_string()
        } else if c == T::lit(2.0) {
            "poincare-ke".to_string()
        } else {
            format!("poincare-disk*{c}")
        };
        RadialN1 {
            label,
            profile: Arc::new(move |rho: T| {
                let u = T::one() - rho;
                let u2 = u * u;
                (c / u2, T::lit(2.0) * c / (u2 * u), T::lit(6.0) * c / (u2 * u2))
            }),
            radius: Some(T::one()),
        }
    }

    /// (1 + |z|²)⁻², the round metric in an affine chart of ℂP¹.
    pub fn fubini_study() -> Self {
        RadialN1 {
            label: "fubini-study".into(),
            profile: Arc::new(|rho: T| {
                let u = T::one() + rho;
                let u2 = u * u;
                (T::one() / u2, -T::lit(2.0) / (u2 * u), T::lit(6.0) / (u2 * u2))
            }),
            radius: None,
        }
    }
}

impl<T: Real> MetricProvider<T> for RadialN1<T> {
    fn dim(&self) -> usize {
        1
    }
    fn label(&self) -> String {
        self.label.clone()
    }
    fn max_order(&self) -> usize {
        2
    }
    fn contains(&self, z: &[C<T>]) -> bool {
        self.radius.map_or(true, |r| norm_sqr(z) < r * r)
    }
    fn eval(&self, z: &[C<T>]) -> CMat<T> {
        CMat::scalar(cr((self.profile)(z[0].norm_sqr()).0))
    }
    fn jet_raw(&self, z: &[C<T>], order: usize) -> MetricJet<T> {
        let rho = z[0].norm_sqr();
        let (l0, l1, l2) = (self.profile)(rho);
        let mut j = MetricJet::order0(CMat::scalar(cr(l0)));
        if order >= 1 {
            j.dg = vec![CMat::scalar(z[0].conj() * l1)];
        }
        if order >= 2 {
            j.ddg = vec![CMat::scalar(cr(l1 + rho * l2))];
        }
        j
    }
}

/// Bergman metric ∂∂̄(−log(1 − |z|²)) on the unit ball of ℂⁿ.
#[derive(Clone, Debug)]
pub struct BergmanBall {
    pub n: usize,
}

impl<T: Real> MetricProvider<T> for BergmanBall {
    fn dim(&self) -> usize {
        self.n
    }
    fn label(&self) -> String {
        "bergman-ball".into()
    }
    fn max_order(&self) -> usize {
        2
    }
    fn contains(&self, z: &[C<T>]) -> bool {
        norm_sqr(z) < T::one()
    }
    fn eval(&self, z: &[C<T>]) -> CMat<T> {
        let u = T::one() - norm_sqr(z);
        CMat::from_fn(self.n, |k, l| {
            let d = if k == l { cr(T::one() / u) } else { cz() };
            d + z[k].conj() * z[l] / (u * u)
        })
    }
    fn jet_raw(&self, z: &[C<T>], order: usize) -> MetricJet<T> {
        let n = self.n;
        let u = T::one() - norm_sqr(z);
        let (u2, u3, u4) = (u * u, u * u * u, u * u * u * u);
        let delta = |a: usize, b: usize| if a == b { T::one() } else { T::zero() };
        let zb = |k: usize| z[k].conj();
        let two = T::lit(2.0);
        let mut j = MetricJet::order0(self.eval(z));
        if order >= 1 {
            j.dg = (0..n)
                .map(|a| {
                    CMat::from_fn(n, |k, l| {
                        zb(a) * delta(k, l) / u2 + zb(k) * delta(a, l) / u2 + zb(k) * z[l] * zb(a) * two / u3
                    })
                })
                .collect();
        }
        if order >= 2 {
            let mut ddg = Vec::with_capacity(n * n);
            for a in 0..n {
                for b in 0..n {
                    ddg.push(CMat::from_fn(n, |k, l| {
                        let t1 = (cr(delta(a, b) / u2) + zb(a) * z[b] * two / u3) * delta(k, l);
                        let t2 = (cr(delta(k, b) / u2) + zb(k) * z[b] * two / u3) * delta(a, l);
                        let t3 = z[l]
                            * two
                            * ((zb(a) * delta(k, b) + zb(k) * delta(a, b)) / u3
                                + zb(k) * zb(a) * z[b] * T::lit(3.0) / u4);
                        t1 + t2 + t3
                    }));
                }
            }
            j.ddg = ddg;
        }
        j
    }
}

/// Non-Kähler metric on ℂ²: g₁₁̄ = 1, g₂₂̄ = 1 + |z₁|², g₁₂̄ = 0.
#[derive(Clone, Debug)]
pub struct TorsionExample;

impl<T: Real> MetricProvider<T> for TorsionExample {
    fn dim(&self) -> usize {
        2
    }
    fn label(&self) -> String {
        "torsion-example-1".into()
    }
    fn max_order(&self) -> usize {
        2
    }
    fn eval(&self, z: &[C<T>]) -> CMat<T> {
        let mut g = CMat::identity(2);
        g[(1, 1)] = cr(T::one() + z[0].norm_sqr());
        g
    }
    fn jet_raw(&self, z: &[C<T>], order: usize) -> MetricJet<T> {
        let mut j = MetricJet::order0(self.eval(z));
        if order >= 1 {
            let mut d1 = CMat::zeros(2);
            d1[(1, 1)] = z[0].conj();
            j.dg = vec![d1, CMat::zeros(2)];
        }
        if order >= 2 {
            let mut d11 = CMat::zeros(2);
            d11[(1, 1)] = cr(T::one());
            j.ddg = vec![d11, CMat::zeros(2), CMat::zeros(2), CMat::zeros(2)];
        }
        j
    }
}

/// c · g for a positive constant c.
pub struct Scaled<T: Real> {
    pub base: SharedProvider<T>,
    pub c: T,
}

impl<T: Real> MetricProvider<T> for Scaled<T> {
    fn dim(&self) -> usize {
        self.base.dim()
    }
    fn label(&self) -> String {
        format!("{}*{}", self.base.label(), self.c)
    }
    fn max_order(&self) -> usize {
        self.base.max_order()
    }
    fn contains(&self, z: &[C<T>]) -> bool {
        self.base.contains(z)
    }
    fn eval(&self, z: &[C<T>]) -> CMat<T> {
        self.base.eval(z).scale_re(self.c)
    }
    fn jet_raw(&self, z: &[C<T>], order: usize) -> MetricJet<T> {
        self.base.jet_raw(z, order).scale(self.c)
    }
}

/// g(z) = G₀ + Σ_a (z_a M_a + z̄_a M_a†) + Σ_{ab} z_a z̄_b P_{ab} with P_{ab}† = P_{ba}.
///
/// Hermitian by construction, generally not Kähler; positive near the origin
/// for small coefficients.
#[derive(Clone, Debug)]
pub struct QuadraticMetric<T> {
    pub g0: CMat<T>,
    pub m: Vec<CMat<T>>,
    /// P_{ab} at a * n + b.
    pub p: Vec<CMat<T>>,
    pub radius: T,
}

impl<T: Real> QuadraticMetric<T> {
    /// Random coefficients of size `scale`, symmetrized so the metric is Hermitian.
    pub fn random(n: usize, scale: T, seed: u64) -> Self {
        let mut s = crate::sampling::Sampler::new(seed);
        let rand_mat = |s: &mut crate::sampling::Sampler| {
            CMat::from_fn(n, |_, _| s.complex_gauss::<T>() * scale)
        };
        let a = rand_mat(&mut s);
        let g0 = CMat::identity(n).add(&a.matmul(&a.adjoint()).scale_re(T::lit(0.5)));
        let m: Vec<CMat<T>> = (0..n).map(|_| rand_mat(&mut s)).collect();
        let raw: Vec<CMat<T>> = (0..n * n).map(|_| rand_mat(&mut s)).collect();
        let p = (0..n * n)
            .map(|ab| {
                let (a, b) = (ab / n, ab % n);
                raw[ab].add(&raw[b * n + a].adjoint()).scale_re(T::lit(0.5))
            })
            .collect();
        QuadraticMetric { g0, m, p, radius: T::one() }
    }
}

impl<T: Real> MetricProvider<T> for QuadraticMetric<T> {
    fn dim(&self) -> usize {
        self.g0.dim()
    }
    fn label(&self) -> String {
        "quadratic".into()
    }
    fn max_order(&self) -> usize {
        2
    }
    fn contains(&self, z: &[C<T>]) -> bool {
        norm_sqr(z) < self.radius * self.radius
    }
    fn eval(&self, z: &[C<T>]) -> CMat<T> {
        let n = self.dim();
        let mut g = self.g0.clone();
        for a in 0..n {
            g = g.add(&self.m[a].scale(z[a])).add(&self.m[a].adjoint().scale(z[a].conj()));
            for b in 0..n {
                g = g.add(&self.p[a * n + b].scale(z[a] * z[b].conj()));
            }
        }
        g
    }
    fn jet_raw(&self, z: &[C<T>], order: usize) -> MetricJet<T> {
        let n = self.dim();
        let mut j = MetricJet::order0(self.eval(z));
        if order >= 1 {
            j.dg = (0..n)
                .map(|c| {
                    (0..n).fold(self.m[c].clone(), |acc, b| acc.add(&self.p[c * n + b].scale(z[b].conj())))
                })
                .collect();
        }
        if order >= 2 {
            j.ddg = self.p.clone();
        }
        j
    }
}
