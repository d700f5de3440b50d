//! Chern connection, torsion and curvature from a metric jet.
//!
//! Index conventions: `inverse` is the matrix inverse G⁻¹ of G = (g_{ij̄}), so
//! the contravariant metric is g^{kl̄} = G⁻¹[l][k] (see [`upper`]).

use crate::error::GeomError;
use crate::jet::MetricJet;
use crate::linalg::CMat;
use crate::provider::{jet, MetricProvider};
use crate::scalar::{cz, Real, C};
use crate::tensor::{Tensor3, Tensor4};
use serde::Serialize;

/// g^{kl̄} from the matrix inverse.
#[inline]
pub fn upper<T: Real>(inverse: &CMat<T>, k: usize, l: usize) -> C<T> {
    inverse[(l, k)]
}

#[derive(Clone, Debug)]
pub struct CurvaturePackage<T> {
    pub point: Vec<C<T>>,
    pub metric: CMat<T>,
    pub inverse: CMat<T>,
    /// Γ^k_{ij} at [k][i][j].
    pub connection: Tensor3<T>,
    /// T_{ijl̄} at [i][j][l].
    pub torsion_lower: Tensor3<T>,
    /// T^k_{ij} at [k][i][j].
    pub torsion_mixed: Tensor3<T>,
    /// R_{ij̄kl̄} at [i][j][k][l].
    pub curvature: Option<Tensor4<T>>,
    /// −∂_i∂_j̄ log det g.
    pub ricci: Option<CMat<T>>,
    pub scalar: Option<T>,
}

pub fn connection_of<T: Real>(j: &MetricJet<T>, inverse: &CMat<T>) -> Tensor3<T> {
    let n = j.dim();
    let prods: Vec<CMat<T>> = (0..n).map(|i| j.d(i).matmul(inverse)).collect();
    Tensor3::from_fn(n, |k, i, jj| prods[i][(jj, k)])
}

pub fn torsion_lower_of<T: Real>(j: &MetricJet<T>) -> Tensor3<T> {
    Tensor3::from_fn(j.dim(), |a, b, l| j.d(a)[(b, l)] - j.d(b)[(a, l)])
}

pub fn raise_torsion<T: Real>(t: &Tensor3<T>, inverse: &CMat<T>) -> Tensor3<T> {
    let n = t.n;
    Tensor3::from_fn(n, |k, i, jj| {
        (0..n).fold(cz(), |acc, l| acc + upper(inverse, k, l) * t.get(i, jj, l))
    })
}

pub fn curvature_of<T: Real>(j: &MetricJet<T>, inverse: &CMat<T>) -> Tensor4<T> {
    let n = j.dim();
    let mut blocks = Vec::with_capacity(n * n);
    for a in 0..n {
        let left = j.d(a).matmul(inverse);
        for b in 0..n {
            blocks.push(left.matmul(&j.dbar(b)).sub(j.dd(a, b)));
        }
    }
    Tensor4::from_fn(n, |i, jj, k, l| blocks[i * n + jj][(k, l)])
}

/// Ric_{ij̄} = tr(G⁻¹ ∂_j̄G G⁻¹ ∂_iG) − tr(G⁻¹ ∂_i∂_j̄G), the expansion of
/// −∂_i∂_j̄ log det G.
pub fn ricci_logdet<T: Real>(j: &MetricJet<T>, inverse: &CMat<T>) -> CMat<T> {
    let n = j.dim();
    CMat::from_fn(n, |a, b| {
        let quad = inverse.matmul(&j.dbar(b)).matmul(inverse).matmul(j.d(a)).trace();
        quad - inverse.matmul(j.dd(a, b)).trace()
    })
}

/// g^{kl̄} R_{ij̄kl̄}: the Ricci form read off the full tensor.
pub fn ricci_from_tensor<T: Real>(r: &Tensor4<T>, inverse: &CMat<T>) -> CMat<T> {
    let n = r.n;
    CMat::from_fn(n, |i, jj| {
        let mut s = cz();
        for k in 0..n {
            for l in 0..n {
                s += upper(inverse, k, l) * r.get(i, jj, k, l);
            }
        }
        s
    })
}

/// g^{ij̄} A_{ij̄}.
pub fn trace_with<T: Real>(inverse: &CMat<T>, a: &CMat<T>) -> C<T> {
    inverse.matmul(a).trace()
}

/// Connection and torsion at a point; needs first derivatives.
pub fn chern_connection<T: Real, P: MetricProvider<T> + ?Sized>(
    p: &P,
    z: &[C<T>],
) -> Result<CurvaturePackage<T>, GeomError> {
    let j = jet(p, z, 1)?;
    Ok(package_from_jet(z, &j, false)?)
}

/// Same data as [`chern_connection`]; named for the torsion-centric call sites.
pub fn torsion<T: Real, P: MetricProvider<T> + ?Sized>(
    p: &P,
    z: &[C<T>],
) -> Result<CurvaturePackage<T>, GeomError> {
    chern_connection(p, z)
}

/// Full package: connection, torsion, curvature tensor, Ricci and scalar.
pub fn chern_curvature<T: Real, P: MetricProvider<T> + ?Sized>(
    p: &P,
    z: &[C<T>],
) -> Result<CurvaturePackage<T>, GeomError> {
    let j = jet(p, z, 2)?;
    package_from_jet(z, &j, true)
}

pub fn package_from_jet<T: Real>(
    z: &[C<T>],
    j: &MetricJet<T>,
    with_curvature: bool,
) -> Result<CurvaturePackage<T>, GeomError> {
    let inverse = j.g.inverse()?;
    let connection = connection_of(j, &inverse);
    let torsion_lower = torsion_lower_of(j);
    let torsion_mixed = raise_torsion(&torsion_lower, &inverse);
    let (curvature, ricci, scalar) = if with_curvature {
        if j.order() < 2 {
            return Err(GeomError::DerivativeOrder {
                label: "jet".into(),
                needed: 2,
                available: j.order(),
            });
        }
        let r = curvature_of(j, &inverse);
        let ric = ricci_logdet(j, &inverse);
        let s = trace_with(&inverse, &ric).re;
        (Some(r), Some(ric), Some(s))
    } else {
        (None, None, None)
    };
    Ok(CurvaturePackage {
        point: z.to_vec(),
        metric: j.g.clone(),
        inverse,
        connection,
        torsion_lower,
        torsion_mixed,
        curvature,
        ricci,
        scalar,
    })
}

/// ∇_i T_{j̄l̄k} at [i][j][l][k], with T_{j̄l̄k} = ∂_j̄ g_{kl̄} − ∂_l̄ g_{kj̄}.
///
/// The Chern connection has no mixed-type Christoffel symbols, so the barred
/// slots are differentiated plainly and only k picks up −Γ^q_{ik}.
pub fn nabla_torsion<T: Real>(j: &MetricJet<T>, pkg: &CurvaturePackage<T>) -> Tensor4<T> {
    let n = j.dim();
    let tb = |a: usize, b: usize, k: usize| pkg.torsion_lower.get(a, b, k).conj();
    Tensor4::from_fn(n, |i, a, b, k| {
        let d = j.dd(i, a)[(k, b)] - j.dd(i, b)[(k, a)];
        let corr = (0..n).fold(cz(), |acc, q| acc + pkg.connection.get(q, i, k) * tb(a, b, q));
        d - corr
    })
}

/// ∇_ī T_{jlk̄} at [i][j][l][k]; only the barred slot k̄ carries a connection term.
pub fn nabla_bar_torsion<T: Real>(j: &MetricJet<T>, pkg: &CurvaturePackage<T>) -> Tensor4<T> {
    let n = j.dim();
    Tensor4::from_fn(n, |i, a, b, k| {
        let d = j.dd(a, i)[(b, k)] - j.dd(b, i)[(a, k)];
        let corr = (0..n).fold(cz(), |acc, q| {
            acc + pkg.connection.get(q, i, k).conj() * pkg.torsion_lower.get(a, b, q)
        });
        d - corr
    })
}

/// Largest |R_{ij̄kl̄} − R_{il̄kj̄} + ∇_i T_{j̄l̄k}| over all indices.
pub fn kahler_identity_residual<T: Real, P: MetricProvider<T> + ?Sized>(
    p: &P,
    z: &[C<T>],
) -> Result<T, GeomError> {
    let j = jet(p, z, 2)?;
    let pkg = package_from_jet(z, &j, true)?;
    Ok(kahler_identity_residual_of(&j, &pkg))
}

pub fn kahler_identity_residual_of<T: Real>(j: &MetricJet<T>, pkg: &CurvaturePackage<T>) -> T {
    let n = j.dim();
    let r = pkg.curvature.as_ref().expect("curvature computed");
    let nt = nabla_torsion(j, pkg);
    let mut worst = T::zero();
    for i in 0..n {
        for a in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let v = r.get(i, a, k, l) - r.get(i, l, k, a) + nt.get(i, a, l, k);
                    worst = worst.max(v.norm());
                }
            }
        }
    }
    worst
}

/// One exported tensor component.
#[derive(Clone, Debug, Serialize)]
pub struct ComponentRecord {
    pub point: Vec<[f64; 2]>,
    pub tensor: String,
    pub index: Vec<usize>,
    pub re: f64,
    pub im: f64,
}

impl<T: Real> CurvaturePackage<T> {
    /// Flattens the package into {point, component-index, re, im} records.
    pub fn records(&self) -> Vec<ComponentRecord> {
        let point: Vec<[f64; 2]> = self.point.iter().map(|w| [w.re.as_f64(), w.im.as_f64()]).collect();
        let n = self.metric.dim();
        let mut out = Vec::new();
        let mut push = |name: &str, index: Vec<usize>, v: C<T>| {
            out.push(ComponentRecord {
                point: point.clone(),
                tensor: name.to_string(),
                index,
                re: v.re.as_f64(),
                im: v.im.as_f64(),
            })
        };
        for i in 0..n {
            for jj in 0..n {
                push("metric", vec![i, jj], self.metric[(i, jj)]);
                for k in 0..n {
                    push("connection", vec![i, jj, k], self.connection.get(i, jj, k));
                    push("torsion", vec![i, jj, k], self.torsion_lower.get(i, jj, k));
                    if let Some(r) = &self.curvature {
                        for l in 0..n {
                            push("curvature", vec![i, jj, k, l], r.get(i, jj, k, l));
                        }
                    }
                }
                if let Some(ric) = &self.ricci {
                    push("ricci", vec![i, jj], ric[(i, jj)]);
                }
            }
        }
        out
    }
}
