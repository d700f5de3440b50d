//! Evolution of Λ = tr_g h under the Chern-Ricci flow, split into the terms
//! (I), (II), (III) and the log-form term (IV).
//!
//! T₀ below is the torsion of the evolving metric g, which the flow preserves.

use crate::curvature::{package_from_jet, upper, CurvaturePackage};
use crate::error::GeomError;
use crate::fd::{scalar_d, scalar_ddbar, Stencil};
use crate::jet::MetricJet;
use crate::provider::{metric_at, MetricProvider};
use crate::scalar::{cz, Real, C};
use crate::tensor::Tensor3;

#[derive(Clone, Debug)]
pub struct TraceDiagnostics<T> {
    pub lambda: T,
    /// Ψ^k_{ij} = Γ̂^k_{ij} − Γ^k_{ij} at [k][i][j].
    pub psi_tensor: Tensor3<T>,
    pub term_i: T,
    pub term_ii: T,
    pub term_iii: T,
    /// Exact (IV) = Λ⁻¹[(I) + Λ⁻¹|∂Λ|²_g]; present when ∂Λ is supplied.
    pub term_iv: Option<T>,
    /// Torsion bound on (I).
    pub term_i_bound: T,
    /// Upper bound on (IV): Λ⁻¹·term_i_bound − 2Λ⁻²Re[h_{pr̄}g^{ar̄}g^{il̄}g^{pq̄}(T₀)_{ail̄}∂_q̄Λ].
    pub term_iv_bound: Option<T>,
    /// (∂_t − Δ)Λ − [(I) + (II) + (III)].
    pub heat_residual: T,
}

/// Independently computed ∂_tΛ, ΔΛ and optionally ∂_iΛ.
#[derive(Clone, Debug)]
pub struct TraceInputs<T> {
    pub dt_lambda: T,
    pub lap_lambda: T,
    pub grad_lambda: Option<Vec<C<T>>>,
}

pub fn tr_g_h<T: Real>(g: &crate::linalg::CMat<T>, h: &crate::linalg::CMat<T>) -> Result<T, GeomError> {
    Ok(g.inverse()?.matmul(h).trace().re)
}

/// g^{iq̄}g^{pj̄}h_{ij̄}R_{pq̄}: ∂_tΛ when ∂_t g = −Ric.
pub fn lambda_rate<T: Real>(gpkg: &CurvaturePackage<T>, h: &crate::linalg::CMat<T>) -> T {
    let ric = gpkg.ricci.as_ref().expect("ricci computed");
    let inv = &gpkg.inverse;
    inv.matmul(h).matmul(inv).matmul(ric).trace().re
}

/// ΔΛ = g^{ij̄}∂_i∂_j̄Λ and ∂_iΛ by finite differences of the pointwise trace.
pub fn trace_derivatives_fd<T: Real, G, H>(
    g: &G,
    h: &H,
    z: &[C<T>],
    stencil: &Stencil,
) -> Result<(T, Vec<C<T>>), GeomError>
where
    G: MetricProvider<T> + ?Sized,
    H: MetricProvider<T> + ?Sized,
{
    let lam = |w: &[C<T>]| -> T {
        match (metric_at(g, w), metric_at(h, w)) {
            (Ok(gw), Ok(hw)) => tr_g_h(&gw, &hw).unwrap_or(T::nan()),
            _ => T::nan(),
        }
    };
    let dd = scalar_ddbar(&lam, z, stencil);
    let d = scalar_d(&lam, z, stencil);
    let ginv = metric_at(g, z)?.inverse()?;
    Ok((ginv.matmul(&dd).trace().re, d))
}

/// Terms of the Λ evolution at one point from jets of g (evolving) and h (fixed).
pub fn trace_and_terms<T: Real>(
    gj: &MetricJet<T>,
    hj: &MetricJet<T>,
    z: &[C<T>],
    inputs: &TraceInputs<T>,
) -> Result<TraceDiagnostics<T>, GeomError> {
    if gj.dim() != hj.dim() {
        return Err(GeomError::DimensionMismatch { expected: gj.dim(), found: hj.dim() });
    }
    let n = gj.dim();
    let gp = package_from_jet(z, gj, false)?;
    let hp = package_from_jet(z, hj, true)?;
    let gi = &gp.inverse;
    let hi = &hp.inverse;
    let gu = |a: usize, b: usize| upper(gi, a, b);
    let hu = |a: usize, b: usize| upper(hi, a, b);
    let h = &hj.g;
    let lambda = gi.matmul(h).trace().re;
    let psi = Tensor3::from_fn(n, |k, i, j| hp.connection.get(k, i, j) - gp.connection.get(k, i, j));
    let t0 = &gp.torsion_lower;
    let th = &hp.torsion_lower;
    let two = T::lit(2.0);

    // (I): −|Ψ|² + 2Re[g^{ij̄}g^{kl̄}g^{pq̄}h_{kj̄} conj(Ψ^s_{lq}) (T₀)_{pis̄}]
    let mut quad: C<T> = cz();
    let mut cross: C<T> = cz();
    for i in 0..n {
        for j in 0..n {
            for p in 0..n {
                for q in 0..n {
                    let w = gu(i, j) * gu(p, q);
                    for k in 0..n {
                        for l in 0..n {
                            quad += h[(k, l)] * w * psi.get(k, p, i) * psi.get(l, q, j).conj();
                            for s in 0..n {
                                cross += w * gu(k, l) * h[(k, j)] * psi.get(s, l, q).conj() * t0.get(p, i, s);
                            }
                        }
                    }
                }
            }
        }
    }
    let term_i = -quad.re + two * cross.re;

    // (II), first line: g^{lk̄}g^{jī}g^{qp̄}h_{jk̄}(T₀)_{īp̄r}[T̂_{lqs̄}h^{rs̄} − (T₀)_{lqs̄}g^{rs̄}]
    let mut ii_a: C<T> = cz();
    for l in 0..n {
        for k in 0..n {
            for j in 0..n {
                for i in 0..n {
                    for q in 0..n {
                        for p in 0..n {
                            let w = gu(l, k) * gu(j, i) * gu(q, p) * h[(j, k)];
                            for r in 0..n {
                                let t0bar = t0.get(i, p, r).conj();
                                let mut br = cz();
                                for s in 0..n {
                                    br += th.get(l, q, s) * hu(r, s) - t0.get(l, q, s) * gu(r, s);
                                }
                                ii_a += w * t0bar * br;
                            }
                        }
                    }
                }
            }
        }
    }
    // (II), second line: ∇̂_p (T₀)_{q̄l̄i} + ∇̂_l̄ (T₀)_{piq̄}
    let mut ii_b: C<T> = cz();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    for p in 0..n {
                        for q in 0..n {
                            let w = gu(i, j) * gu(k, l) * gu(p, q) * h[(k, j)];
                            let mut a = gj.dd(p, q)[(i, l)] - gj.dd(p, l)[(i, q)];
                            let mut b = gj.dd(p, l)[(i, q)] - gj.dd(i, l)[(p, q)];
                            for r in 0..n {
                                a -= hp.connection.get(r, p, i) * t0.get(q, l, r).conj();
                                b -= hp.connection.get(r, l, q).conj() * t0.get(p, i, r);
                            }
                            ii_b += w * (a + b);
                        }
                    }
                }
            }
        }
    }
    let term_ii = (ii_a + ii_b).re;

    // (III)
    let rh = hp.curvature.as_ref().expect("curvature computed");
    let mut iii: C<T> = cz();
    for i in 0..n {
        for j in 0..n {
            for p in 0..n {
                for q in 0..n {
                    iii += gu(i, j) * gu(p, q) * rh.get(p, q, i, j);
                }
            }
        }
    }
    let term_iii = iii.re;

    // h_{pr̄}h_{cq̄}h^{kā}g^{sr̄}g^{cd̄}g^{ij̄}g^{pq̄}(T₀)_{siā}(T₀)_{d̄j̄k}
    let mut bound: C<T> = cz();
    for p in 0..n {
        for r in 0..n {
            for c in 0..n {
                for q in 0..n {
                    let w1 = h[(p, r)] * h[(c, q)] * gu(p, q);
                    for s in 0..n {
                        for d in 0..n {
                            let w2 = w1 * gu(s, r) * gu(c, d);
                            for i in 0..n {
                                for j in 0..n {
                                    let w3 = w2 * gu(i, j);
                                    for k in 0..n {
                                        for a in 0..n {
                                            bound += w3 * hu(k, a) * t0.get(s, i, a) * t0.get(d, j, k).conj();
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    let term_i_bound = bound.re;

    let (term_iv, term_iv_bound) = match &inputs.grad_lambda {
        Some(dl) => {
            let mut grad_sq: C<T> = cz();
            for i in 0..n {
                for j in 0..n {
                    grad_sq += gu(i, j) * dl[i] * dl[j].conj();
                }
            }
            let exact = (term_i + grad_sq.re / lambda) / lambda;
            let mut lin: C<T> = cz();
            for p in 0..n {
                for r in 0..n {
                    for a in 0..n {
                        for i in 0..n {
                            for l in 0..n {
                                for q in 0..n {
                                    lin += h[(p, r)] * gu(a, r) * gu(i, l) * gu(p, q) * t0.get(a, i, l) * dl[q].conj();
                                }
                            }
                        }
                    }
                }
            }
            let b = term_i_bound / lambda - two * lin.re / (lambda * lambda);
            (Some(exact), Some(b))
        }
        None => (None, None),
    };

    let heat_residual = inputs.dt_lambda - inputs.lap_lambda - (term_i + term_ii + term_iii);
    Ok(TraceDiagnostics {
        lambda,
        psi_tensor: psi,
        term_i,
        term_ii,
        term_iii,
        term_iv,
        term_i_bound,
        term_iv_bound,
        heat_residual,
    })
}
