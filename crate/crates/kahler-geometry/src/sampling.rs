//! Deterministic random directions and unitary frames.

use crate::linalg::CMat;
use crate::scalar::{cz, Real, C};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Standard normal by Box–Muller.
    pub fn gauss<T: Real>(&mut self) -> T {
        let u1: f64 = self.rng.gen_range(f64::MIN_POSITIVE..1.0);
        let u2: f64 = self.rng.gen::<f64>();
        T::lit((-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos())
    }

    pub fn complex_gauss<T: Real>(&mut self) -> C<T> {
        C::new(self.gauss(), self.gauss())
    }

    /// Uniform point on the Euclidean unit sphere of ℂⁿ.
    pub fn sphere<T: Real>(&mut self, n: usize) -> Vec<C<T>> {
        loop {
            let v: Vec<C<T>> = (0..n).map(|_| self.complex_gauss()).collect();
            let r = crate::scalar::norm_sqr(&v).sqrt();
            if r > T::lit(1e-8) {
                return v.into_iter().map(|w| w / r).collect();
            }
        }
    }

    /// Haar-distributed unitary matrix (Gram–Schmidt on a complex Gaussian matrix).
    pub fn unitary<T: Real>(&mut self, n: usize) -> CMat<T> {
        loop {
            let m = CMat::from_fn(n, |_, _| self.complex_gauss());
            if let Some(u) = gram_schmidt_columns(&m) {
                return u;
            }
        }
    }

    /// Small anti-Hermitian matrix with entries of scale `eps`.
    pub fn anti_hermitian<T: Real>(&mut self, n: usize, eps: T) -> CMat<T> {
        let mut k = CMat::zeros(n);
        for i in 0..n {
            k[(i, i)] = C::new(T::zero(), self.gauss::<T>() * eps);
            for j in i + 1..n {
                let w = self.complex_gauss::<T>() * eps;
                k[(i, j)] = w;
                k[(j, i)] = -w.conj();
            }
        }
        k
    }
}

/// Orthonormalizes the columns; None if they are numerically dependent.
pub fn gram_schmidt_columns<T: Real>(m: &CMat<T>) -> Option<CMat<T>> {
    let n = m.dim();
    let mut cols: Vec<Vec<C<T>>> = Vec::with_capacity(n);
    for j in 0..n {
        let mut v: Vec<C<T>> = (0..n).map(|i| m[(i, j)]).collect();
        for c in &cols {
            let dot = (0..n).fold(cz(), |acc, i| acc + c[i].conj() * v[i]);
            for i in 0..n {
                v[i] -= c[i] * dot;
            }
        }
        let r = crate::scalar::norm_sqr(&v).sqrt();
        if r < T::lit(1e-10) {
            return None;
        }
        cols.push(v.into_iter().map(|w| w / r).collect());
    }
    Some(CMat::from_fn(n, |i, j| cols[j][i]))
}

/// Cayley transform (I − K/2)⁻¹(I + K/2) of an anti-Hermitian K: a unitary near I.
pub fn cayley<T: Real>(k: &CMat<T>) -> CMat<T> {
    let n = k.dim();
    let half = k.scale_re(T::lit(0.5));
    let id = CMat::identity(n);
    let left = id.sub(&half).inverse().expect("I - K/2 is invertible for anti-Hermitian K");
    left.matmul(&id.add(&half))
}
