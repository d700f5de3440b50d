//! Real scalar fields with first and mixed second derivatives.

use crate::linalg::CMat;
use crate::scalar::{cr, Real, C};
use std::sync::Arc;

/// F, ∂_a F and ∂_a∂_b̄ F at a point. ∂_ā F = conj(∂_a F) since F is real.
#[derive(Clone, Debug)]
pub struct ScalarJet<T> {
    pub f: T,
    pub df: Vec<C<T>>,
    pub ddf: CMat<T>,
}

pub trait ScalarField<T: Real>: Send + Sync {
    fn dim(&self) -> usize;
    fn label(&self) -> String;
    fn jet(&self, z: &[C<T>]) -> ScalarJet<T>;
    fn value(&self, z: &[C<T>]) -> T {
        self.jet(z).f
    }
}

pub type SharedField<T> = Arc<dyn ScalarField<T>>;

#[derive(Clone, Debug)]
pub struct ConstantField<T> {
    pub n: usize,
    pub c: T,
}

impl<T: Real> ScalarField<T> for ConstantField<T> {
    fn dim(&self) -> usize {
        self.n
    }
    fn label(&self) -> String {
        format!("const({})", self.c)
    }
    fn jet(&self, _z: &[C<T>]) -> ScalarJet<T> {
        ScalarJet { f: self.c, df: vec![cr(T::zero()); self.n], ddf: CMat::zeros(self.n) }
    }
}

/// F(σ) for a profile in σ = |z|², returning (F, F′, F″).
pub type SigmaProfile<T> = Arc<dyn Fn(T) -> (T, T, T) + Send + Sync>;

/// Field depending on z only through σ = |z|².
///
/// ∂_a F = F′ z̄_a and ∂_a∂_b̄ F = F′ δ_ab + F″ z̄_a z_b.
#[derive(Clone)]
pub struct RadialField<T> {
    pub n: usize,
    pub label: String,
    pub profile: SigmaProfile<T>,
}

impl<T: Real> ScalarField<T> for RadialField<T> {
    fn dim(&self) -> usize {
        self.n
    }
    fn label(&self) -> String {
        self.label.clone()
    }
    fn jet(&self, z: &[C<T>]) -> ScalarJet<T> {
        let sigma = crate::scalar::norm_sqr(z);
        let (f, f1, f2) = (self.profile)(sigma);
        let n = self.n;
        ScalarJet {
            f,
            df: z.iter().map(|w| w.conj() * f1).collect(),
            ddf: CMat::from_fn(n, |a, b| {
                let d = if a == b { cr(f1) } else { cr(T::zero()) };
                d + z[a].conj() * z[b] * f2
            }),
        }
    }
}

impl<T: Real> RadialField<T> {
    /// ½ log(1 + ε·b(σ)) with the bump b(σ) = cos⁴(πσ / (2σ_b)) on σ < σ_b, 0 beyond.
    ///
    /// e^{2F} then multiplies a metric by 1 + ε·b, a compactly supported perturbation.
    pub fn log_bump(n: usize, eps: T, sigma_b: T) -> Self {
        let profile = move |s: T| {
            if s >= sigma_b {
                return (T::zero(), T::zero(), T::zero());
            }
            let k = T::PI() / (T::lit(2.0) * sigma_b);
            let (sn, cs) = (k * s).sin_cos();
            let b = cs.powi(4);
            let b1 = -T::lit(4.0) * k * cs.powi(3) * sn;
            let b2 = T::lit(4.0) * k * k * (T::lit(3.0) * cs * cs * sn * sn - cs.powi(4));
            let q = T::one() + eps * b;
            let half = T::lit(0.5);
            (half * q.ln(), half * eps * b1 / q, half * (eps * b2 / q - (eps * b1 / q).powi(2)))
        };
        RadialField { n, label: format!("bump({eps},{sigma_b})"), profile: Arc::new(profile) }
    }
}

/// ε sin(x) cos(y) on one complex variable z = x + iy; 2π-periodic in both.
#[derive(Clone, Debug)]
pub struct TorusBump<T> {
    pub eps: T,
}

impl<T: Real> ScalarField<T> for TorusBump<T> {
    fn dim(&self) -> usize {
        1
    }
    fn label(&self) -> String {
        format!("torus-bump({})", self.eps)
    }
    fn jet(&self, z: &[C<T>]) -> ScalarJet<T> {
        let (sx, cx) = z[0].re.sin_cos();
        let (sy, cy) = z[0].im.sin_cos();
        let e = self.eps;
        let f = e * sx * cy;
        let fx = e * cx * cy;
        let fy = -e * sx * sy;
        let half = T::lit(0.5);
        ScalarJet {
            f,
            df: vec![C::new(fx * half, -fy * half)],
            ddf: CMat::scalar(cr(-half * f)),
        }
    }
}
