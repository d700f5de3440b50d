//! Holomorphic sectional curvature and its maximum over directions.

use crate::curvature::{nabla_bar_torsion, package_from_jet};
use crate::error::GeomError;
use crate::frames::{frame_components, nabla_bar_norm_of, Slot};
use crate::linalg::{orthonormal_frame, CMat};
use crate::provider::{jet, MetricProvider};
use crate::sampling::Sampler;
use crate::scalar::{cz, Real, C};
use crate::tensor::Tensor4;
use serde::{Deserialize, Serialize};

const HSC_SLOTS: [Slot; 4] = [Slot::Holo, Slot::Anti, Slot::Holo, Slot::Anti];

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SamplerConfig {
    pub directions: usize,
    pub ascent_steps: usize,
    pub frames: usize,
    pub frame_ascent_steps: usize,
    pub seed: u64,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig { directions: 2048, ascent_steps: 50, frames: 512, frame_ascent_steps: 50, seed: 7 }
    }
}

#[derive(Clone, Debug)]
pub struct HscReport<T> {
    pub point: Vec<C<T>>,
    pub kappa: T,
    /// Unit-length (for g) direction attaining `kappa`, phase-normalized.
    pub maximizer: Vec<C<T>>,
    pub nabla_bar_t_norm: T,
    /// (n+1)/(2n)·kappa + nabla_bar_t_norm.
    pub combined: T,
}

/// R(X, X̄, X, X̄) / |X|⁴.
pub fn hsc_value<T: Real>(r: &Tensor4<T>, g: &CMat<T>, x: &[C<T>]) -> T {
    let d = g.transpose().quadratic(x).re;
    r.contract_xxyy(x, x).re / (d * d)
}

/// 2 ∂f/∂X̄ for f = N/D², the steepest-ascent direction in real coordinates.
fn hsc_gradient<T: Real>(r: &Tensor4<T>, g: &CMat<T>, x: &[C<T>]) -> Vec<C<T>> {
    let n = x.len();
    let num = r.contract_xxyy(x, x).re;
    let d = g.transpose().quadratic(x).re;
    let mut grad = vec![cz(); n];
    for (m, gm) in grad.iter_mut().enumerate() {
        let mut dn = cz();
        for i in 0..n {
            for k in 0..n {
                for l in 0..n {
                    dn += r.get(i, m, k, l) * x[i] * x[k] * x[l].conj();
                    dn += r.get(i, l, k, m) * x[i] * x[l].conj() * x[k];
                }
            }
        }
        let dd = (0..n).fold(cz(), |acc, i| acc + g[(i, m)] * x[i]);
        *gm = (dn * d - dd * (num * T::lit(2.0))) * (T::lit(2.0) / (d * d * d));
    }
    grad
}

/// Scales to |X|_g = 1 and rotates the phase so the first non-negligible
/// component is real and positive.
pub fn canonical_direction<T: Real>(g: &CMat<T>, x: &[C<T>]) -> Vec<C<T>> {
    let len = g.transpose().quadratic(x).re.sqrt();
    let mut v: Vec<C<T>> = x.iter().map(|w| *w / len).collect();
    if let Some(p) = v.iter().find(|w| w.norm() > T::lit(1e-12)) {
        let phase = p.conj() / p.norm();
        for w in v.iter_mut() {
            *w = *w * phase;
        }
    }
    v
}

fn lex_less<T: Real>(a: &[C<T>], b: &[C<T>]) -> bool {
    for (x, y) in a.iter().zip(b) {
        if x.re != y.re {
            return x.re < y.re;
        }
        if x.im != y.im {
            return x.im < y.im;
        }
    }
    false
}

/// Maximum of the holomorphic sectional curvature of the tensor `r` for the
/// metric `g`: sphere sampling then projected gradient ascent.
///
/// The search runs on the unit sphere of a g-orthonormal frame, so rescaling g
/// rescales the result exactly and leaves the search path unchanged.
pub fn hsc_max_tensor<T: Real>(r: &Tensor4<T>, g: &CMat<T>, cfg: &SamplerConfig) -> (T, Vec<C<T>>) {
    let n = g.dim();
    if n == 1 {
        let x = canonical_direction(g, &[C::new(T::one(), T::zero())]);
        return (hsc_value(r, g, &x), x);
    }
    let frame = orthonormal_frame(g).expect("metric checked positive definite");
    let rf = Tensor4 { n, data: frame_components(&r.data, n, &HSC_SLOTS, &frame) };
    let id = CMat::identity(n);
    let mut sampler = Sampler::new(cfg.seed);
    let tie = T::lit(1e-12);
    let mut samples: Vec<(T, Vec<C<T>>)> = Vec::with_capacity(cfg.directions + n);
    for a in 0..n {
        let mut e = vec![cz(); n];
        e[a] = C::new(T::one(), T::zero());
        samples.push((hsc_value(&rf, &id, &e), e));
    }
    for _ in 0..cfg.directions {
        let x = canonical_direction(&id, &sampler.sphere::<T>(n));
        samples.push((hsc_value(&rf, &id, &x), x));
    }
    let top = samples.iter().fold(T::neg_infinity(), |m, s| m.max(s.0));
    let (mut best, mut arg) = samples
        .iter()
        .filter(|s| s.0 >= top - tie)
        .fold(None::<(T, Vec<C<T>>)>, |acc, s| match acc {
            Some(a) if !lex_less(&s.1, &a.1) => Some(a),
            _ => Some((s.0, s.1.clone())),
        })
        .unwrap();
    best = best.max(top);
    let mut eta = T::lit(0.1);
    for _ in 0..cfg.ascent_steps {
        let grad = hsc_gradient(&rf, &id, &arg);
        let gnorm = crate::scalar::norm_sqr(&grad).sqrt();
        if gnorm < T::lit(1e-14) {
            break;
        }
        let mut accepted = false;
        for _ in 0..30 {
            let cand: Vec<C<T>> = arg.iter().zip(&grad).map(|(x, d)| *x + *d * (eta / gnorm)).collect();
            let cand = canonical_direction(&id, &cand);
            let v = hsc_value(&rf, &id, &cand);
            if v > best + tie {
                best = v;
                arg = cand;
                accepted = true;
                eta = eta * T::lit(1.5);
                break;
            }
            eta = eta * T::lit(0.5);
        }
        if !accepted {
            break;
        }
    }
    (best, canonical_direction(g, &frame.mul_vec(&arg)))
}

/// HSC maximum, ∇̄T frame norm and their combination at a point.
pub fn hsc_max<T: Real, P: MetricProvider<T> + ?Sized>(
    p: &P,
    z: &[C<T>],
    cfg: &SamplerConfig,
) -> Result<HscReport<T>, GeomError> {
    let j = jet(p, z, 2)?;
    let pkg = package_from_jet(z, &j, true)?;
    let r = pkg.curvature.as_ref().expect("curvature computed");
    let (kappa, maximizer) = hsc_max_tensor(r, &j.g, cfg);
    let nb = nabla_bar_norm_of(&nabla_bar_torsion(&j, &pkg), &j.g, cfg)?;
    let n = T::from_usize_lossy(j.dim());
    Ok(HscReport {
        point: z.to_vec(),
        kappa,
        maximizer,
        nabla_bar_t_norm: nb,
        combined: (n + T::one()) / (T::lit(2.0) * n) * kappa + nb,
    })
}
