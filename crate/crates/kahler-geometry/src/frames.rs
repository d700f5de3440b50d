//! Tensor components in unitary frames, frame-invariant norms, and the
//! frame sweep behind |∇̄T|.

use crate::curvature::{nabla_bar_torsion, package_from_jet};
use crate::error::GeomError;
use crate::hsc::SamplerConfig;
use crate::linalg::{orthonormal_frame, CMat};
use crate::provider::{jet, MetricProvider};
use crate::sampling::{cayley, Sampler};
use crate::scalar::{cz, Real, C};
use crate::tensor::{Tensor3, Tensor4};

/// Slot kind of a covariant tensor index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    Holo,
    Anti,
}

/// Contracts slot `s` of a flat rank-r array with the frame matrix `f`
/// (frame vector α = column α), conjugating for anti-holomorphic slots.
fn contract_slot<T: Real>(data: &[C<T>], n: usize, rank: usize, s: usize, kind: Slot, f: &CMat<T>) -> Vec<C<T>> {
    let mut out = vec![cz(); data.len()];
    let stride = n.pow((rank - 1 - s) as u32);
    let outer = n.pow(s as u32);
    for o in 0..outer {
        for inner in 0..stride {
            for alpha in 0..n {
                let mut acc = cz();
                for i in 0..n {
                    let e = match kind {
                        Slot::Holo => f[(i, alpha)],
                        Slot::Anti => f[(i, alpha)].conj(),
                    };
                    acc += data[(o * n + i) * stride + inner] * e;
                }
                out[(o * n + alpha) * stride + inner] = acc;
            }
        }
    }
    out
}

pub fn frame_components<T: Real>(data: &[C<T>], n: usize, slots: &[Slot], f: &CMat<T>) -> Vec<C<T>> {
    let rank = slots.len();
    let mut cur = data.to_vec();
    for (s, kind) in slots.iter().enumerate() {
        cur = contract_slot(&cur, n, rank, s, *kind, f);
    }
    cur
}

fn max_modulus<T: Real>(v: &[C<T>]) -> T {
    v.iter().fold(T::zero(), |m, x| m.max(x.norm()))
}

/// Pointwise norm |A|_h of a covariant tensor: Frobenius norm of its
/// components in an h-orthonormal frame.
pub fn tensor_norm<T: Real>(data: &[C<T>], n: usize, slots: &[Slot], h: &CMat<T>) -> Result<T, GeomError> {
    let e = orthonormal_frame(h)?;
    let comps = frame_components(data, n, slots, &e);
    Ok(comps.iter().fold(T::zero(), |acc, x| acc + x.norm_sqr()).sqrt())
}

pub const TORSION_SLOTS: [Slot; 3] = [Slot::Holo, Slot::Holo, Slot::Anti];
/// Slots of ∇_ī T_{jlk̄} stored at [i][j][l][k].
pub const NABLA_BAR_T_SLOTS: [Slot; 4] = [Slot::Anti, Slot::Holo, Slot::Holo, Slot::Anti];

pub fn torsion_norm<T: Real>(t: &Tensor3<T>, h: &CMat<T>) -> Result<T, GeomError> {
    tensor_norm(&t.data, t.n, &TORSION_SLOTS, h)
}

/// max over unitary frames of h of the largest component modulus of a
/// covariant tensor, by sampled frames followed by local ascent.
pub fn frame_sweep_max<T: Real>(
    data: &[C<T>],
    n: usize,
    slots: &[Slot],
    h: &CMat<T>,
    cfg: &SamplerConfig,
) -> Result<T, GeomError> {
    let base = orthonormal_frame(h)?;
    let base_comps = frame_components(data, n, slots, &CMat::identity(n));
    let value = |u: &CMat<T>| max_modulus(&frame_components(&base_comps, n, slots, &base.matmul(u)));
    if n == 1 || max_modulus(data) == T::zero() {
        return Ok(value(&CMat::identity(n)));
    }
    let mut sampler = Sampler::new(cfg.seed ^ 0x5eed_f4a3);
    let mut best_u = CMat::identity(n);
    let mut best = value(&best_u);
    for _ in 1..cfg.frames.max(1) {
        let u = sampler.unitary::<T>(n);
        let v = value(&u);
        if v > best {
            best = v;
            best_u = u;
        }
    }
    let mut eps = T::lit(0.3);
    for _ in 0..cfg.frame_ascent_steps {
        let mut improved = false;
        for _ in 0..4 {
            let k = sampler.anti_hermitian::<T>(n, eps);
            let cand = best_u.matmul(&cayley(&k));
            let v = value(&cand);
            if v > best {
                best = v;
                best_u = cand;
                improved = true;
                break;
            }
        }
        if !improved {
            eps = eps * T::lit(0.6);
        }
    }
    Ok(best)
}

/// |∇̂_∂̄ T̂|_h: the frame maximum of |∇̂_ī T̂_{jlk̄}|.
pub fn nabla_bar_torsion_norm<T: Real, P: MetricProvider<T> + ?Sized>(
    h: &P,
    z: &[C<T>],
    cfg: &SamplerConfig,
) -> Result<T, GeomError> {
    let j = jet(h, z, 2)?;
    let pkg = package_from_jet(z, &j, false)?;
    let a = nabla_bar_torsion(&j, &pkg);
    nabla_bar_norm_of(&a, &j.g, cfg)
}

pub fn nabla_bar_norm_of<T: Real>(a: &Tensor4<T>, h: &CMat<T>, cfg: &SamplerConfig) -> Result<T, GeomError> {
    frame_sweep_max(&a.data, a.n, &NABLA_BAR_T_SLOTS, h, cfg)
}
