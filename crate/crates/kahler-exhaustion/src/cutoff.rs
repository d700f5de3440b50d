//! The cutoff profile: f with a log singularity at s = 1, the switch φ, and
//! 𝔉(s) = ∫₀ˢ φ f′.

use crate::quad::{integrate, QuadResult};
use kahler_geometry::Real;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CutoffError {
    #[error("tau must lie in (0, 1/8), got {0}")]
    Tau(f64),
    #[error("mollifier width must lie in (0, 1/2], got {0}")]
    Mollifier(f64),
    #[error("quad_resolution must be positive")]
    Resolution,
    #[error("s = {0} is outside [0, 1)")]
    Domain(f64),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CutoffSpec {
    pub tau: f64,
    /// Panel budget of the adaptive quadrature for 𝔉.
    #[serde(default = "default_resolution")]
    pub quad_resolution: usize,
    /// Fraction of the switch interval over which φ′ ramps up (and down).
    #[serde(default = "default_mollifier")]
    pub mollifier_width: f64,
}

fn default_resolution() -> usize {
    200
}
fn default_mollifier() -> f64 {
    0.25
}

impl CutoffSpec {
    pub fn new(tau: f64) -> Self {
        CutoffSpec { tau, quad_resolution: default_resolution(), mollifier_width: default_mollifier() }
    }

    pub fn validate(&self) -> Result<(), CutoffError> {
        if !(self.tau > 0.0 && self.tau < 0.125) {
            return Err(CutoffError::Tau(self.tau));
        }
        if !(self.mollifier_width > 0.0 && self.mollifier_width <= 0.5) {
            return Err(CutoffError::Mollifier(self.mollifier_width));
        }
        if self.quad_resolution == 0 {
            return Err(CutoffError::Resolution);
        }
        Ok(())
    }
}

pub const QUAD_TOL: f64 = 1e-12;

// Degree-7 smoothstep and its derivatives / antiderivative on [0, 1].
fn step7(x: f64) -> [f64; 4] {
    let x2 = x * x;
    let x3 = x2 * x;
    [
        x2 * x2 * (35.0 - 84.0 * x + 70.0 * x2 - 20.0 * x3),
        x3 * (140.0 - 420.0 * x + 420.0 * x2 - 140.0 * x3),
        x2 * (420.0 - 1680.0 * x + 2100.0 * x2 - 840.0 * x3),
        x * (840.0 - 5040.0 * x + 8400.0 * x2 - 4200.0 * x3),
    ]
}

fn step7_integral(x: f64) -> f64 {
    let x5 = x.powi(5);
    x5 * (7.0 - 14.0 * x + 10.0 * x * x - 2.5 * x * x * x)
}

#[derive(Clone, Debug)]
pub struct Cutoff<T> {
    pub spec: CutoffSpec,
    pub tau: T,
    /// φ vanishes on [0, start].
    pub start: T,
    /// φ is one on [end, 1).
    pub end: T,
    /// 𝔉(end) with its quadrature report.
    pub plateau: QuadResult<T>,
}

impl<T: Real> Cutoff<T> {
    pub fn new(spec: CutoffSpec) -> Result<Self, CutoffError> {
        spec.validate()?;
        let tau = T::lit(spec.tau);
        let start = T::one() - tau + tau * tau;
        let end = start + tau * tau;
        let mut c = Cutoff {
            spec,
            tau,
            start,
            end,
            plateau: QuadResult { value: T::zero(), error: T::zero(), panels: 0, converged: true },
        };
        c.plateau = c.integral(end);
        Ok(c)
    }

    fn check(&self, s: T) -> Result<(), CutoffError> {
        if s >= T::zero() && s < T::one() {
            Ok(())
        } else {
            Err(CutoffError::Domain(s.as_f64()))
        }
    }

    /// f and its first four derivatives.
    pub fn f_jet(&self, s: T) -> Result<[T; 5], CutoffError> {
        self.check(s)?;
        let mut out = [T::zero(); 5];
        let tau = self.tau;
        if s <= T::one() - tau {
            return Ok(out);
        }
        // Distance to the singularity taken directly from 1 − s, which is exact
        // near s = 1, rather than as 1 − x.
        let m = (T::one() - s) / tau;
        let p = T::lit(2.0) - m;
        out[0] = -(m * p).ln();
        let mut fact = T::one();
        for k in 1..5 {
            let kk = k as i32;
            let sign = if k % 2 == 0 { T::one() } else { -T::one() };
            out[k] = fact * (m.powi(-kk) + sign * p.powi(-kk)) / tau.powi(kk);
            fact *= T::from_usize_lossy(k);
        }
        Ok(out)
    }

    pub fn f(&self, s: T) -> Result<T, CutoffError> {
        Ok(self.f_jet(s)?[0])
    }

    /// φ and its first three derivatives; defined for all real s.
    pub fn phi_jet(&self, s: T) -> [T; 4] {
        if s <= self.start {
            return [T::zero(); 4];
        }
        if s >= self.end {
            return [T::one(), T::zero(), T::zero(), T::zero()];
        }
        let w = (self.end - self.start).as_f64();
        let d = self.spec.mollifier_width;
        let u = (s - self.start).as_f64() / w;
        // ψ = φ′·w(1 − d): ramps by step7 on [0, d], flat, ramps down on [1 − d, 1].
        let (int, psi) = if u < d {
            let p = step7(u / d);
            (d * step7_integral(u / d), [p[0], p[1] / d, p[2] / (d * d)])
        } else if u > 1.0 - d {
            let v = (1.0 - u) / d;
            let p = step7(v);
            (1.0 - d - d * step7_integral(v), [p[0], -p[1] / d, p[2] / (d * d)])
        } else {
            (0.5 * d + (u - d), [1.0, 0.0, 0.0])
        };
        let norm = 1.0 - d;
        [
            T::lit(int / norm),
            T::lit(psi[0] / (w * norm)),
            T::lit(psi[1] / (w * w * norm)),
            T::lit(psi[2] / (w * w * w * norm)),
        ]
    }

    /// ∫_start^s φ f′ by adaptive quadrature; 0 for s ≤ start.
    pub fn integral(&self, s: T) -> QuadResult<T> {
        let lo = self.start;
        if s <= lo {
            return QuadResult { value: T::zero(), error: T::zero(), panels: 0, converged: true };
        }
        integrate(
            |x| self.phi_jet(x)[0] * self.f_jet(x).map(|j| j[1]).unwrap_or(T::nan()),
            lo,
            s,
            T::lit(QUAD_TOL),
            self.spec.quad_resolution,
        )
    }

    /// 𝔉(s). Past the switch, 𝔉(s) = 𝔉(end) + f(s) − f(end).
    pub fn frak(&self, s: T) -> Result<T, CutoffError> {
        self.check(s)?;
        if s <= self.start {
            Ok(T::zero())
        } else if s < self.end {
            Ok(self.integral(s).value)
        } else {
            Ok(self.plateau.value + self.f(s)? - self.f(self.end)?)
        }
    }

    /// 𝔉, 𝔉′, 𝔉″ in closed form.
    pub fn frak_jet2(&self, s: T) -> Result<[T; 3], CutoffError> {
        let f = self.f_jet(s)?;
        let p = self.phi_jet(s);
        Ok([self.frak(s)?, p[0] * f[1], p[1] * f[1] + p[0] * f[2]])
    }

    /// 𝔉‴ and 𝔉⁗ by central differences of the closed-form 𝔉″.
    pub fn frak_fd34(&self, s: T) -> Result<[T; 2], CutoffError> {
        self.check(s)?;
        let scale = (self.tau * self.tau).min(T::one() - s);
        let e = scale * T::lit(1e-3);
        let d2 = |x: T| -> Result<T, CutoffError> {
            if x <= self.start {
                return Ok(T::zero());
            }
            let f = self.f_jet(x)?;
            let p = self.phi_jet(x);
            Ok(p[1] * f[1] + p[0] * f[2])
        };
        let (lo, mid, hi) = (d2(s - e)?, d2(s)?, d2(s + e)?);
        Ok([(hi - lo) / (T::lit(2.0) * e), (hi - T::lit(2.0) * mid + lo) / (e * e)])
    }

    /// 𝔉‴ and 𝔉⁗ by the Leibniz rule.
    pub fn frak_leibniz34(&self, s: T) -> Result<[T; 2], CutoffError> {
        let f = self.f_jet(s)?;
        let p = self.phi_jet(s);
        let three = T::lit(3.0);
        Ok([
            p[2] * f[1] + T::lit(2.0) * p[1] * f[2] + p[0] * f[3],
            p[3] * f[1] + three * p[2] * f[2] + three * p[1] * f[3] + p[0] * f[4],
        ])
    }

    /// 𝔉⁽ᵏ⁾ for k ≤ 4: closed form up to k = 2, finite differences above.
    pub fn frak_derivative(&self, s: T, k: usize) -> Result<T, CutoffError> {
        match k {
            0..=2 => Ok(self.frak_jet2(s)?[k]),
            3 | 4 => Ok(self.frak_fd34(s)?[k - 3]),
            _ => Ok(T::nan()),
        }
    }
}
