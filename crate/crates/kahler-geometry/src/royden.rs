//! Royden-type bound on the bisectional trace of h by its holomorphic
//! sectional curvature and |∇̄T̂|.

use crate::curvature::{package_from_jet, upper};
use crate::error::GeomError;
use crate::frames::nabla_bar_norm_of;
use crate::hsc::{hsc_max_tensor, SamplerConfig};
use crate::linalg::CMat;
use crate::provider::{check_metric, jet, MetricProvider};
use crate::scalar::{cz, Real, C};

#[derive(Clone, Debug)]
pub struct RoydenReport<T> {
    pub lhs: T,
    pub rhs: T,
    /// rhs − lhs.
    pub slack: T,
    pub kappa: T,
    pub kappa0: T,
    pub nabla_bar_t_norm: T,
    pub trace: T,
}

/// Compares g^{ij̄}g^{kl̄}R̂_{ij̄kl̄} with
/// ((n+1)/(2n)κ + |∇̂_∂̄T̂|)(tr_g h)² + ½κ₀[−(1/n)(tr_g h)² + g^{ij̄}g^{kl̄}h_{kj̄}h_{il̄}],
/// where κ is the HSC maximum of h at the point and R̂, T̂ belong to h.
pub fn royden_check<T: Real, P: MetricProvider<T> + ?Sized>(
    g: &CMat<T>,
    h: &P,
    z: &[C<T>],
    kappa0: T,
    cfg: &SamplerConfig,
) -> Result<RoydenReport<T>, GeomError> {
    check_metric(g)?;
    let hj = jet(h, z, 2)?;
    let pkg = package_from_jet(z, &hj, true)?;
    let r = pkg.curvature.as_ref().expect("curvature computed");
    let (kappa, _) = hsc_max_tensor(r, &hj.g, cfg);
    // roundoff in the sampled maximum is not a violation
    if kappa > kappa0 + T::lit(1e-9) * kappa0.abs().max(T::one()) {
        return Err(GeomError::Precondition(format!("HSC maximum {kappa} exceeds kappa0 {kappa0}")));
    }
    let nb = nabla_bar_norm_of(&crate::curvature::nabla_bar_torsion(&hj, &pkg), &hj.g, cfg)?;
    let ginv = g.inverse()?;
    let n = g.dim();
    let mut lhs = cz();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    lhs += upper(&ginv, i, j) * upper(&ginv, k, l) * r.get(i, j, k, l);
                }
            }
        }
    }
    let gh = ginv.matmul(&hj.g);
    let tr = gh.trace().re;
    let sq = gh.matmul(&gh).trace().re;
    let nn = T::from_usize_lossy(n);
    let half = T::lit(0.5);
    let rhs = ((nn + T::one()) / (T::lit(2.0) * nn) * kappa + nb) * tr * tr
        + half * kappa0 * (sq - tr * tr / nn);
    Ok(RoydenReport {
        lhs: lhs.re,
        rhs,
        slack: rhs - lhs.re,
        kappa,
        kappa0,
        nabla_bar_t_norm: nb,
        trace: tr,
    })
}
