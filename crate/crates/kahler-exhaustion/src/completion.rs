//! Conformal completion e^{2F} g of a metric on the sublevel set {ρ < ρᵢ},
//! F = 𝔉(ρ/ρᵢ), and the torsion / curvature bookkeeping around it.

use crate::cutoff::{Cutoff, CutoffSpec};
use kahler_estimates::{EstimateReport, SlackTracker};
use kahler_geometry::catalog::FactorEntry;
use kahler_geometry::conformal::{conformal_curvature_law, conformal_torsion_law, ConformalProvider};
use kahler_geometry::curvature::{connection_of, torsion_lower_of};
use kahler_geometry::field::{RadialField, ScalarField, ScalarJet, SharedField};
use kahler_geometry::frames::{frame_components, nabla_bar_norm_of, torsion_norm, Slot};
use kahler_geometry::hsc::hsc_max_tensor;
use kahler_geometry::linalg::{hermitian_eigenvalues, orthonormal_frame};
use kahler_geometry::tensor::{Tensor3, Tensor4};
use kahler_geometry::{
    hsc_max, jet, package_from_jet, Catalog, CMat, GeomError, MetricJet, MetricProvider, Real, SamplerConfig,
    SharedProvider, C,
};
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// F = 𝔉(ρ/ρᵢ) with its first and mixed second derivatives; NaN where ρ ≥ ρᵢ.
pub struct CutoffField<T: Real> {
    pub rho: SharedField<T>,
    pub rho_i: T,
    pub cutoff: Arc<Cutoff<T>>,
}

impl<T: Real> CutoffField<T> {
    pub fn level(&self, z: &[C<T>]) -> T {
        self.rho.value(z) / self.rho_i
    }
}

impl<T: Real> ScalarField<T> for CutoffField<T> {
    fn dim(&self) -> usize {
        self.rho.dim()
    }
    fn label(&self) -> String {
        format!("cutoff({},{})", self.cutoff.spec.tau, self.rho_i)
    }
    fn jet(&self, z: &[C<T>]) -> ScalarJet<T> {
        let r = self.rho.jet(z);
        let n = r.df.len();
        let Ok([f, f1, f2]) = self.cutoff.frak_jet2(r.f / self.rho_i) else {
            let nan = C::new(T::nan(), T::nan());
            return ScalarJet { f: T::nan(), df: vec![nan; n], ddf: CMat::from_fn(n, |_, _| nan) };
        };
        let d1 = f1 / self.rho_i;
        let d2 = f2 / (self.rho_i * self.rho_i);
        ScalarJet {
            f,
            df: r.df.iter().map(|w| *w * d1).collect(),
            ddf: CMat::from_fn(n, |a, b| r.ddf[(a, b)] * d1 + r.df[a] * r.df[b].conj() * d2),
        }
    }
}

/// ρ = 1 + |z|².
pub fn unit_shifted_norm<T: Real>(n: usize) -> SharedField<T> {
    Arc::new(RadialField {
        n,
        label: "1+|z|^2".into(),
        profile: Arc::new(|s: T| (T::one() + s, T::one(), T::zero())),
    })
}

/// e^{2F} g restricted to {ρ < ρᵢ}.
pub struct CompletedMetric<T: Real> {
    pub inner: ConformalProvider<T>,
    pub field: Arc<CutoffField<T>>,
}

impl<T: Real> CompletedMetric<T> {
    pub fn new(base: SharedProvider<T>, field: Arc<CutoffField<T>>) -> Self {
        CompletedMetric { inner: ConformalProvider::new(base, field.clone()), field }
    }
}

impl<T: Real> MetricProvider<T> for CompletedMetric<T> {
    fn dim(&self) -> usize {
        self.inner.dim()
    }
    fn label(&self) -> String {
        self.inner.label()
    }
    fn max_order(&self) -> usize {
        self.inner.max_order()
    }
    fn contains(&self, z: &[C<T>]) -> bool {
        self.inner.contains(z) && self.field.level(z) < T::one()
    }
    fn eval(&self, z: &[C<T>]) -> CMat<T> {
        self.inner.eval(z)
    }
    fn jet_raw(&self, z: &[C<T>], order: usize) -> MetricJet<T> {
        self.inner.jet_raw(z, order)
    }
}

/// Registers `name` as the factor 𝔉((1 + |z|²)/ρᵢ), so that
/// `conformal:<base>:<name>` builds the completion of any catalog metric.
pub fn register_cutoff<T: Real>(catalog: &mut Catalog<T>, name: &str, spec: CutoffSpec, rho_i: f64) -> Result<(), crate::CutoffError> {
    let cutoff = Arc::new(Cutoff::<T>::new(spec)?);
    catalog.register_factor(
        name,
        FactorEntry {
            description: format!("F = frakF((1+|z|^2)/{rho_i}) with tau = {}", spec.tau),
            build: Arc::new(move |n| {
                Ok(Arc::new(CutoffField { rho: unit_shifted_norm(n), rho_i: T::lit(rho_i), cutoff: cutoff.clone() })
                    as SharedField<T>)
            }),
        },
    );
    Ok(())
}

/// ∇_ī T_{jlk̄} of the torsion of the metric behind `jg`, taken with the
/// Chern connection `conn` of another metric.
pub fn mixed_nabla_bar_torsion<T: Real>(jg: &MetricJet<T>, conn: &Tensor3<T>) -> Tensor4<T> {
    let n = jg.dim();
    let t = torsion_lower_of(jg);
    Tensor4::from_fn(n, |i, a, b, k| {
        let d = jg.dd(a, i)[(b, k)] - jg.dd(b, i)[(a, k)];
        let corr = (0..n).fold(C::new(T::zero(), T::zero()), |acc, q| acc + conn.get(q, i, k).conj() * t.get(a, b, q));
        d - corr
    })
}

/// Smallest α with α⁻¹g ≤ h ≤ αg at one point.
pub fn equivalence_constant<T: Real>(g: &CMat<T>, h: &CMat<T>) -> Result<T, GeomError> {
    let e = orthonormal_frame(g)?;
    let n = g.dim();
    let m = frame_components(h.as_slice(), n, &[Slot::Holo, Slot::Anti], &e);
    let hm = CMat::from_fn(n, |a, b| m[a * n + b]);
    let ev = hermitian_eigenvalues(&hm);
    let lo = ev.iter().fold(T::infinity(), |a, &b| a.min(b));
    let hi = ev.iter().fold(T::zero(), |a, &b| a.max(b));
    Ok(hi.max(T::one() / lo))
}

fn rel_diff3<T: Real>(a: &Tensor3<T>, b: &Tensor3<T>) -> f64 {
    let d = a.data.iter().zip(&b.data).fold(0.0f64, |m, (x, y)| m.max((*x - *y).norm().as_f64()));
    d / b.max_abs().as_f64().max(1.0)
}

fn rel_diff4<T: Real>(a: &Tensor4<T>, b: &Tensor4<T>) -> f64 {
    let d = a.data.iter().zip(&b.data).fold(0.0f64, |m, (x, y)| m.max((*x - *y).norm().as_f64()));
    d / b.max_abs().as_f64().max(1.0)
}

#[derive(Clone)]
pub struct CompletionSpec<T: Real> {
    pub rho: SharedField<T>,
    pub rho_i: T,
    pub cutoff: CutoffSpec,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompletionReport {
    pub alpha: f64,
    /// sup of |T₀|²_h + |T̂|_h|T₀|_h + |∇̂_∂̄T₀|_h
    pub beta: f64,
    /// sup of (n+1)/(2n)·HSC⁺(h) + |∇̂_∂̄T̂|_h
    pub kappa0: f64,
    /// Suprema of the four left-hand sides, the last one minus kappa0.
    pub lhs: [f64; 4],
    /// lhs divided by β, β, β(1+β), β(1+β).
    pub constants: [f64; 4],
    pub c: f64,
    /// Largest relative disagreement between direct and transformation-law torsion.
    pub torsion_agreement: f64,
    pub curvature_agreement: f64,
    pub hsc_agreement: f64,
    /// Largest change of metric or torsion where F vanishes identically.
    pub untouched_change: f64,
    pub samples: usize,
    pub excluded: usize,
}

impl CompletionReport {
    /// Passes when both code paths agree to `agree_tol` and every constant is finite.
    pub fn estimate(&self, agree_tol: f64) -> EstimateReport {
        let mut tr = SlackTracker::new("conformal-completion", 0.0);
        for v in [self.torsion_agreement, self.curvature_agreement, self.hsc_agreement] {
            tr.push(agree_tol - v, &[], 0.0);
        }
        tr.push(-self.untouched_change, &[], 0.0);
        tr.push(if self.c.is_finite() { 0.0 } else { f64::NAN }, &[], 0.0);
        let mut r = tr.finish();
        for (k, v) in [
            ("alpha", self.alpha),
            ("beta", self.beta),
            ("kappa0", self.kappa0),
            ("c", self.c),
            ("c_i", self.constants[0]),
            ("c_ii", self.constants[1]),
            ("c_iii", self.constants[2]),
            ("c_iv", self.constants[3]),
        ] {
            r = r.note(k, v);
        }
        r
    }
}

pub struct Completion<T: Real> {
    pub metric: Arc<CompletedMetric<T>>,
    pub reference: Arc<CompletedMetric<T>>,
    pub field: Arc<CutoffField<T>>,
    pub report: CompletionReport,
}

/// Builds g₀ᵢ = e^{2F}g₀ and hᵢ = e^{2F}h and measures, over `points`:
/// α, β, κ₀ of the pair (g₀, h); the left-hand sides
/// |T₀ᵢ|²_{hᵢ}, |T₀ᵢ|_{hᵢ}|T̂ᵢ|_{hᵢ}, |∇̂ᵢ_∂̄T₀ᵢ|_{hᵢ} and
/// (n+1)/(2n)κᵢ + |∇̂ᵢ_∂̄T̂ᵢ|_{hᵢ} − κ₀; and the agreement of the direct
/// tensors of the completion with the transformation laws.
/// Points with ρ ≥ ρᵢ are skipped and counted.
pub fn conformal_completion<T: Real>(
    g0: SharedProvider<T>,
    h: SharedProvider<T>,
    spec: &CompletionSpec<T>,
    points: &[Vec<C<T>>],
    cfg: &SamplerConfig,
) -> Result<Completion<T>, crate::CompletionError> {
    let cutoff = Arc::new(Cutoff::<T>::new(spec.cutoff)?);
    let field = Arc::new(CutoffField { rho: spec.rho.clone(), rho_i: spec.rho_i, cutoff });
    let gi = Arc::new(CompletedMetric::new(g0.clone(), field.clone()));
    let hi = Arc::new(CompletedMetric::new(h.clone(), field.clone()));
    let mut rep = CompletionReport {
        alpha: 1.0,
        beta: 0.0,
        kappa0: f64::NEG_INFINITY,
        lhs: [0.0; 4],
        constants: [0.0; 4],
        c: 0.0,
        torsion_agreement: 0.0,
        curvature_agreement: 0.0,
        hsc_agreement: 0.0,
        untouched_change: 0.0,
        samples: 0,
        excluded: 0,
    };
    let mut combined_i = Vec::new();
    for z in points {
        if !gi.contains(z) || !hi.contains(z) {
            rep.excluded += 1;
            continue;
        }
        rep.samples += 1;
        let jg = jet(g0.as_ref(), z, 2)?;
        let jh = jet(h.as_ref(), z, 2)?;
        let pg = package_from_jet(z, &jg, false)?;
        let ph = package_from_jet(z, &jh, true)?;
        let t0 = torsion_norm(&pg.torsion_lower, &jh.g)?;
        let th = torsion_norm(&ph.torsion_lower, &jh.g)?;
        let nt0 = nabla_bar_norm_of(&mixed_nabla_bar_torsion(&jg, &ph.connection), &jh.g, cfg)?;
        rep.beta = rep.beta.max((t0 * t0 + th * t0 + nt0).as_f64());
        rep.alpha = rep.alpha.max(equivalence_constant(&jg.g, &jh.g)?.as_f64()).max(th.as_f64());
        rep.kappa0 = rep.kappa0.max(hsc_max(h.as_ref(), z, cfg)?.combined.as_f64());

        let fj = field.jet(z);
        let jgi = jet(gi.as_ref(), z, 2)?;
        let jhi = jet(hi.as_ref(), z, 2)?;
        let pgi = package_from_jet(z, &jgi, false)?;
        let phi = package_from_jet(z, &jhi, true)?;

        rep.torsion_agreement = rep
            .torsion_agreement
            .max(rel_diff3(&pgi.torsion_lower, &conformal_torsion_law(&jg.g, &pg.torsion_lower, &fj)))
            .max(rel_diff3(&phi.torsion_lower, &conformal_torsion_law(&jh.g, &ph.torsion_lower, &fj)));
        let r_direct = phi.curvature.as_ref().expect("curvature computed");
        let r_law = conformal_curvature_law(&jh.g, ph.curvature.as_ref().expect("curvature computed"), &fj);
        rep.curvature_agreement = rep.curvature_agreement.max(rel_diff4(r_direct, &r_law));
        let k_direct = hsc_max_tensor(r_direct, &jhi.g, cfg).0.as_f64();
        let k_law = hsc_max_tensor(&r_law, &jhi.g, cfg).0.as_f64();
        rep.hsc_agreement = rep.hsc_agreement.max((k_direct - k_law).abs() / k_law.abs().max(1.0));
        if fj.f == T::zero() && fj.df.iter().all(|w| w.norm() == T::zero()) {
            let dm = jgi.g.sub(&jg.g).max_abs().as_f64();
            let dt = rel_diff3(&pgi.torsion_lower, &pg.torsion_lower);
            rep.untouched_change = rep.untouched_change.max(dm).max(dt);
        }

        let ti = torsion_norm(&pgi.torsion_lower, &jhi.g)?.as_f64();
        let thi = torsion_norm(&phi.torsion_lower, &jhi.g)?.as_f64();
        let nti = nabla_bar_norm_of(&mixed_nabla_bar_torsion(&jgi, &connection_of(&jhi, &phi.inverse)), &jhi.g, cfg)?;
        rep.lhs[0] = rep.lhs[0].max(ti * ti);
        rep.lhs[1] = rep.lhs[1].max(ti * thi);
        rep.lhs[2] = rep.lhs[2].max(nti.as_f64());
        combined_i.push(hsc_max(hi.as_ref(), z, cfg)?.combined.as_f64());
    }
    rep.lhs[3] = combined_i.iter().fold(0.0f64, |m, &v| m.max(v - rep.kappa0));
    let b = rep.beta;
    let w = [b, b, b * (1.0 + b), b * (1.0 + b)];
    for k in 0..4 {
        rep.constants[k] = if rep.lhs[k] == 0.0 { 0.0 } else { rep.lhs[k] / w[k] };
    }
    rep.c = rep.constants.iter().fold(0.0f64, |m, &v| m.max(v));
    Ok(Completion { metric: gi, reference: hi, field, report: rep })
}

/// Points of {1 + |z|² ≤ 1 + r_max²} in ℂⁿ (n ≤ 2 varies both moduli):
/// `m + 1` radii and, for n ≥ 2, `m/2 + 1` angles in [0, π/2] between the
/// first two coordinates.
pub fn polar_samples<T: Real>(n: usize, r_max: f64, m: usize) -> Vec<Vec<C<T>>> {
    let mut out = Vec::new();
    let angles = if n >= 2 { m / 2 + 1 } else { 1 };
    for i in 0..=m {
        let r = r_max * i as f64 / m as f64;
        for k in 0..angles {
            let th = if angles > 1 { std::f64::consts::FRAC_PI_2 * k as f64 / (angles - 1) as f64 } else { 0.0 };
            let mut z = vec![C::new(T::zero(), T::zero()); n];
            z[0] = C::new(T::lit(r * th.cos()), T::zero());
            if n >= 2 {
                z[1] = C::new(T::lit(r * th.sin()), T::zero());
            }
            out.push(z);
            if r == 0.0 {
                break;
            }
        }
    }
    out
}
