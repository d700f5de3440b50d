//! Small dense complex matrices. Dimensions here are the complex dimension of
//! a chart, so everything is O(n³) with n ≤ 4 in practice.

use crate::error::GeomError;
use crate::scalar::{cr, cz, Real, C};
use num_complex::Complex;
use std::ops::{Index, IndexMut};

#[derive(Clone, Debug, PartialEq)]
pub struct CMat<T> {
    n: usize,
    a: Vec<C<T>>,
}

impl<T: Real> CMat<T> {
    pub fn zeros(n: usize) -> Self {
        CMat { n, a: vec![cz(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = cr(T::one());
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> C<T>) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn from_rows(rows: &[&[C<T>]]) -> Self {
        let n = rows.len();
        Self::from_fn(n, |i, j| rows[i][j])
    }

    pub fn scalar(x: C<T>) -> Self {
        CMat { n: 1, a: vec![x] }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[C<T>] {
        &self.a
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)])
    }

    pub fn matmul(&self, o: &Self) -> Self {
        let n = self.n;
        let mut m = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let s = self[(i, k)];
                if s == cz() {
                    continue;
                }
                for j in 0..n {
                    m.a[i * n + j] += s * o.a[k * n + j];
                }
            }
        }
        m
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::from_fn(self.n, |i, j| self[(i, j)] + o[(i, j)])
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::from_fn(self.n, |i, j| self[(i, j)] - o[(i, j)])
    }

    pub fn scale(&self, s: C<T>) -> Self {
        CMat { n: self.n, a: self.a.iter().map(|x| *x * s).collect() }
    }

    pub fn scale_re(&self, s: T) -> Self {
        self.scale(cr(s))
    }

    pub fn trace(&self) -> C<T> {
        (0..self.n).fold(cz(), |acc, i| acc + self[(i, i)])
    }

    pub fn max_abs(&self) -> T {
        self.a.iter().fold(T::zero(), |m, x| m.max(x.norm()))
    }

    /// ½(A + A†).
    pub fn hermitian_part(&self) -> Self {
        let half = T::lit(0.5);
        Self::from_fn(self.n, |i, j| (self[(i, j)] + self[(j, i)].conj()) * half)
    }

    /// max |a_ij − conj(a_ji)|.
    pub fn hermitian_defect(&self) -> T {
        let mut d = T::zero();
        for i in 0..self.n {
            for j in 0..self.n {
                d = d.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        d
    }

    /// Gauss–Jordan with partial pivoting.
    pub fn inverse(&self) -> Result<Self, GeomError> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        let scale = self.max_abs().max(T::min_positive_value());
        for col in 0..n {
            let (piv, pmag) = (col..n)
                .map(|r| (r, a[(r, col)].norm()))
                .fold((col, -T::one()), |best, c| if c.1 > best.1 { c } else { best });
            if pmag <= scale * T::epsilon() * T::lit(16.0) {
                return Err(GeomError::Degenerate { min_eigenvalue: 0.0 });
            }
            if piv != col {
                for j in 0..n {
                    a.a.swap(col * n + j, piv * n + j);
                    inv.a.swap(col * n + j, piv * n + j);
                }
            }
            let d = a[(col, col)].inv();
            for j in 0..n {
                a.a[col * n + j] = a.a[col * n + j] * d;
                inv.a[col * n + j] = inv.a[col * n + j] * d;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a[(r, col)];
                if f == cz() {
                    continue;
                }
                for j in 0..n {
                    let (ac, ic) = (a.a[col * n + j], inv.a[col * n + j]);
                    a.a[r * n + j] -= f * ac;
                    inv.a[r * n + j] -= f * ic;
                }
            }
        }
        Ok(inv)
    }

    /// Determinant by elimination with partial pivoting.
    pub fn det(&self) -> C<T> {
        let n = self.n;
        let mut a = self.clone();
        let mut det = cr(T::one());
        for col in 0..n {
            let piv = (col..n)
                .max_by(|&p, &q| a[(p, col)].norm().partial_cmp(&a[(q, col)].norm()).unwrap())
                .unwrap();
            if a[(piv, col)] == cz() {
                return cz();
            }
            if piv != col {
                for j in 0..n {
                    a.a.swap(col * n + j, piv * n + j);
                }
                det = -det;
            }
            let d = a[(col, col)];
            det *= d;
            for r in col + 1..n {
                let f = a[(r, col)] / d;
                for j in col..n {
                    let v = a.a[col * n + j];
                    a.a[r * n + j] -= f * v;
                }
            }
        }
        det
    }

    /// v† A v for a column vector v.
    pub fn quadratic(&self, v: &[C<T>]) -> C<T> {
        let n = self.n;
        let mut s = cz();
        for i in 0..n {
            for j in 0..n {
                s += v[i].conj() * self[(i, j)] * v[j];
            }
        }
        s
    }

    pub fn mul_vec(&self, v: &[C<T>]) -> Vec<C<T>> {
        (0..self.n)
            .map(|i| (0..self.n).fold(cz(), |acc, j| acc + self[(i, j)] * v[j]))
            .collect()
    }
}

impl<T> Index<(usize, usize)> for CMat<T> {
    type Output = C<T>;
    fn index(&self, (i, j): (usize, usize)) -> &C<T> {
        &self.a[i * self.n + j]
    }
}

impl<T> IndexMut<(usize, usize)> for CMat<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C<T> {
        &mut self.a[i * self.n + j]
    }
}

/// Eigenvalues of a Hermitian matrix, ascending.
///
/// Works on the real symmetric embedding [[A, −B], [B, A]] of A + iB, whose
/// spectrum is that of the Hermitian matrix with every eigenvalue doubled.
pub fn hermitian_eigenvalues<T: Real>(m: &CMat<T>) -> Vec<T> {
    let n = m.dim();
    let h = m.hermitian_part();
    let big = 2 * n;
    let mut s = vec![T::zero(); big * big];
    for i in 0..n {
        for j in 0..n {
            let (re, im) = (h[(i, j)].re, h[(i, j)].im);
            s[i * big + j] = re;
            s[(i + n) * big + j + n] = re;
            s[i * big + j + n] = -im;
            s[(i + n) * big + j] = im;
        }
    }
    let mut ev = jacobi_symmetric(&mut s, big);
    ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ev.into_iter().step_by(2).collect()
}

/// Cyclic Jacobi sweeps on a dense symmetric matrix stored row-major.
fn jacobi_symmetric<T: Real>(s: &mut [T], n: usize) -> Vec<T> {
    let two = T::lit(2.0);
    for _sweep in 0..64 {
        let mut off = T::zero();
        let mut diag = T::zero();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    off += s[i * n + j] * s[i * n + j];
                } else {
                    diag += s[i * n + i] * s[i * n + i];
                }
            }
        }
        if off <= T::epsilon() * T::epsilon() * (diag + off) || off == T::zero() {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = s[p * n + q];
                if apq == T::zero() {
                    continue;
                }
                let theta = (s[q * n + q] - s[p * n + p]) / (two * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                let c = T::one() / (t * t + T::one()).sqrt();
                let sn = t * c;
                for k in 0..n {
                    let akp = s[k * n + p];
                    let akq = s[k * n + q];
                    s[k * n + p] = c * akp - sn * akq;
                    s[k * n + q] = sn * akp + c * akq;
                }
                for k in 0..n {
                    let apk = s[p * n + k];
                    let aqk = s[q * n + k];
                    s[p * n + k] = c * apk - sn * aqk;
                    s[q * n + k] = sn * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| s[i * n + i]).collect()
}

pub fn min_eigenvalue<T: Real>(m: &CMat<T>) -> T {
    if m.dim() == 1 {
        return m[(0, 0)].re;
    }
    hermitian_eigenvalues(m)[0]
}

/// Lower-triangular L with m = L L†.
pub fn cholesky<T: Real>(m: &CMat<T>) -> Result<CMat<T>, GeomError> {
    let n = m.dim();
    let mut l = CMat::zeros(n);
    for j in 0..n {
        let mut d = m[(j, j)].re;
        for k in 0..j {
            d -= l[(j, k)].norm_sqr();
        }
        if d <= T::zero() {
            return Err(GeomError::Degenerate { min_eigenvalue: d.as_f64() });
        }
        let dj = d.sqrt();
        l[(j, j)] = cr(dj);
        for i in j + 1..n {
            let mut s = m[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)].conj();
            }
            l[(i, j)] = s / dj;
        }
    }
    Ok(l)
}

/// Columns are orthonormal for the Hermitian form `m`: Eᵀ m conj(E) = I.
///
/// With m = L L†, the frame is E = (L⁻¹)ᵀ, i.e. the α-th frame vector has
/// coordinates (L⁻¹)[α][·].
pub fn orthonormal_frame<T: Real>(m: &CMat<T>) -> Result<CMat<T>, GeomError> {
    Ok(cholesky(m)?.inverse()?.transpose())
}

pub fn complex<T: Real>(re: f64, im: f64) -> C<T> {
    Complex::new(T::lit(re), T::lit(im))
}
