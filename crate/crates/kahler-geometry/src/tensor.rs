use crate::scalar::{cz, Real, C};

/// Rank-3 array of complex components over an n-dimensional index range.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor3<T> {
    pub n: usize,
    pub data: Vec<C<T>>,
}

impl<T: Real> Tensor3<T> {
    pub fn zeros(n: usize) -> Self {
        Tensor3 { n, data: vec![cz(); n * n * n] }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize, usize) -> C<T>) -> Self {
        let mut t = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    t.data[(i * n + j) * n + k] = f(i, j, k);
                }
            }
        }
        t
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> C<T> {
        self.data[(i * self.n + j) * self.n + k]
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |m, x| m.max(x.norm()))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Tensor4<T> {
    pub n: usize,
    pub data: Vec<C<T>>,
}

impl<T: Real> Tensor4<T> {
    pub fn zeros(n: usize) -> Self {
        Tensor4 { n, data: vec![cz(); n * n * n * n] }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize, usize, usize) -> C<T>) -> Self {
        let mut t = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        t.data[((i * n + j) * n + k) * n + l] = f(i, j, k, l);
                    }
                }
            }
        }
        t
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> C<T> {
        self.data[((i * self.n + j) * self.n + k) * self.n + l]
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |m, x| m.max(x.norm()))
    }

    pub fn scale_re(&self, c: T) -> Self {
        Tensor4 { n: self.n, data: self.data.iter().map(|x| *x * c).collect() }
    }

    /// Σ A_{ij̄kl̄} X^i X̄^j Y^k Ȳ^l for a tensor with slots (holo, anti, holo, anti).
    pub fn contract_xxyy(&self, x: &[C<T>], y: &[C<T>]) -> C<T> {
        let n = self.n;
        let mut s = cz();
        for i in 0..n {
            for j in 0..n {
                let xij = x[i] * x[j].conj();
                for k in 0..n {
                    for l in 0..n {
                        s += self.get(i, j, k, l) * xij * y[k] * y[l].conj();
                    }
                }
            }
        }
        s
    }
}
