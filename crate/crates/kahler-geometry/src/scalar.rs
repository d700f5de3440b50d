use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};
use std::fmt::{Debug, Display};

/// Real scalar the whole toolkit is generic over.
pub trait Real:
    Float + FloatConst + FromPrimitive + NumAssign + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal. Panics only for values the type cannot hold at all.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal not representable")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn from_usize_lossy(k: usize) -> Self {
        Self::from_usize(k).expect("integer not representable")
    }
}

impl Real for f32 {}
impl Real for f64 {}

pub type C<T> = Complex<T>;

pub fn cr<T: Real>(re: T) -> C<T> {
    Complex::new(re, T::zero())
}

pub fn cz<T: Real>() -> C<T> {
    Complex::new(T::zero(), T::zero())
}

pub fn ci<T: Real>() -> C<T> {
    Complex::new(T::zero(), T::one())
}

/// |z|² summed over coordinates.
pub fn norm_sqr<T: Real>(z: &[C<T>]) -> T {
    z.iter().fold(T::zero(), |acc, w| acc + w.norm_sqr())
}
