//! The volume-ratio field F = (1/n)·log(ω₂ⁿ/ω₁ⁿ) between two metrics that
//! both claim Ric = −ω.

use kahler_geometry::{chern_curvature, GeomError, MetricProvider, Real, C};
use serde::Serialize;
use thiserror::Error;

/// Allowed |Ric + ω|_ω before a metric is rejected as not Kähler-Einstein.
pub const KE_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum UniquenessError {
    #[error("input {which} is not Kahler-Einstein: |Ric + omega| = {residual:e} at {point}")]
    NotKahlerEinstein { which: usize, residual: f64, point: String },
    #[error(transparent)]
    Geometry(#[from] GeomError),
}

#[derive(Clone, Debug, Serialize)]
pub struct UniquenessDiag {
    pub f_field: Vec<f64>,
    pub sup_f: f64,
    pub inf_f: f64,
    /// Largest |Ric + ω|_ω seen over both inputs.
    pub ke_residual: f64,
}

fn log_det_and_ke<T: Real>(p: &dyn MetricProvider<T>, z: &[C<T>]) -> Result<(T, T), GeomError> {
    let pkg = chern_curvature(p, z)?;
    let a = pkg.inverse.matmul(&pkg.ricci.as_ref().expect("ricci computed").add(&pkg.metric));
    let norm = a.matmul(&a).trace().re.abs().sqrt();
    Ok((pkg.metric.det().re.ln(), norm))
}

pub fn uniqueness_f_check<T: Real>(
    omega1: &dyn MetricProvider<T>,
    omega2: &dyn MetricProvider<T>,
    points: &[Vec<C<T>>],
) -> Result<UniquenessDiag, UniquenessError> {
    let n = omega1.dim();
    if omega2.dim() != n {
        return Err(GeomError::DimensionMismatch { expected: n, found: omega2.dim() }.into());
    }
    let mut f = Vec::with_capacity(points.len());
    let mut worst = 0.0f64;
    for z in points {
        let (l1, k1) = log_det_and_ke(omega1, z)?;
        let (l2, k2) = log_det_and_ke(omega2, z)?;
        for (which, k) in [(1, k1), (2, k2)] {
            let k = k.as_f64();
            worst = worst.max(k);
            if !(k <= KE_TOLERANCE) {
                return Err(UniquenessError::NotKahlerEinstein {
                    which,
                    residual: k,
                    point: kahler_geometry::provider::format_point(z),
                });
            }
        }
        f.push(((l2 - l1) / T::from_usize_lossy(n)).as_f64());
    }
    let sup_f = f.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let inf_f = f.iter().cloned().fold(f64::INFINITY, f64::min);
    Ok(UniquenessDiag { f_field: f, sup_f, inf_f, ke_residual: worst })
}
