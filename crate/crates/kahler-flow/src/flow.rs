//! Chern-Ricci flow of a metric λ|dz|² sampled on a grid, in metric form and
//! in potential form, plus the normalized flow.
//!
//! Ricci forms are computed against the initial metric:
//! Ric(λ) = Ric(λ₀) − ¼Δ log(λ/λ₀), with Ric(λ₀) taken from the analytic
//! provider. Only the smooth ratio λ/λ₀ is differenced, so scaled copies of
//! λ₀ (and the outer layers of steep complete metrics) carry no
//! discretization error.

use crate::boundary::Boundary;
use crate::grid::{Grid, GridError, GridKind};
use kahler_geometry::{chern_curvature, GeomError, MetricProvider, Real, C};
use std::collections::VecDeque;
use std::sync::Arc;
use thiserror::Error;

/// Smallest admissible λ.
pub const DEGENERATE: f64 = 1e-12;
/// A stability bound below this means the metric is collapsing somewhere;
/// the explicit scheme would only creep toward the singular time.
pub const DT_FLOOR: f64 = 1e-10;
const RING: usize = 256;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FlowError {
    #[error("flow breakdown at z = {x} + {y}i, t = {t}: metric value {value:e}")]
    Breakdown { x: f64, y: f64, t: f64, value: f64 },
    #[error("step {dt:e} exceeds the stability bound {dt_max:e}")]
    StepTooLarge { dt: f64, dt_max: f64 },
    #[error("requested time {requested} is not covered by the run (reached {reached})")]
    Horizon { requested: f64, reached: f64 },
    #[error("{0}")]
    Setup(String),
    #[error(transparent)]
    Geometry(#[from] GeomError),
    #[error(transparent)]
    Grid(#[from] GridError),
}

pub type Result<T> = std::result::Result<T, FlowError>;

/// Grid, initial data and boundary condition shared by every state of a run.
#[derive(Clone, Debug)]
pub struct FlowSetup<T> {
    pub grid: Grid<T>,
    pub lambda0: Vec<T>,
    pub ric0: Vec<T>,
    pub boundary: Boundary,
    pub cfl_safety: T,
}

impl<T: Real> FlowSetup<T> {
    pub fn new(grid: Grid<T>, provider: &dyn MetricProvider<T>, boundary: Boundary) -> Result<Self> {
        if provider.dim() != 1 {
            return Err(FlowError::Setup(format!(
                "grid flows need a one-dimensional metric, `{}` has dimension {}",
                provider.label(),
                provider.dim()
            )));
        }
        let mut lambda0 = Vec::with_capacity(grid.len());
        let mut ric0 = Vec::with_capacity(grid.len());
        for z in &grid.points {
            let pkg = chern_curvature(provider, std::slice::from_ref(z))?;
            lambda0.push(pkg.metric[(0, 0)].re);
            ric0.push(pkg.ricci.as_ref().expect("ricci computed")[(0, 0)].re);
        }
        Self::from_samples(grid, lambda0, ric0, boundary)
    }

    pub fn from_samples(grid: Grid<T>, lambda0: Vec<T>, ric0: Vec<T>, boundary: Boundary) -> Result<Self> {
        if lambda0.len() != grid.len() || ric0.len() != grid.len() {
            return Err(FlowError::Setup("sample count does not match the grid".into()));
        }
        if boundary == Boundary::Extrapolate && grid.kind != GridKind::Radial {
            return Err(FlowError::Setup("extrapolated boundary values need a radial grid".into()));
        }
        let setup = FlowSetup { grid, lambda0, ric0, boundary, cfl_safety: T::lit(0.2) };
        setup.check_positive(&setup.lambda0, T::zero())?;
        Ok(setup)
    }

    pub fn with_safety(mut self, safety: f64) -> Self {
        self.cfl_safety = T::lit(safety);
        self
    }

    fn check_positive(&self, lam: &[T], t: T) -> Result<()> {
        let floor = T::lit(DEGENERATE);
        for (i, &v) in lam.iter().enumerate() {
            if !(v > floor) || !v.is_finite() {
                let z = self.grid.points[i];
                return Err(FlowError::Breakdown { x: z.re.as_f64(), y: z.im.as_f64(), t: t.as_f64(), value: v.as_f64() });
            }
        }
        Ok(())
    }

    /// Ric(λ) at every node; boundary nodes report Ric(λ₀), which is exact
    /// for scaled boundary data.
    pub fn ricci(&self, lam: &[T]) -> Vec<T> {
        let mut out = vec![T::zero(); lam.len()];
        let mut logr = vec![T::zero(); lam.len()];
        self.ricci_into(lam, &mut logr, &mut out);
        out
    }

    /// Also leaves log(λ/λ₀) in `logr`.
    fn ricci_into(&self, lam: &[T], logr: &mut [T], out: &mut [T]) {
        for i in 0..lam.len() {
            logr[i] = (lam[i] / self.lambda0[i]).ln();
        }
        self.grid.laplacian_into(logr, out);
        let quarter = T::lit(0.25);
        for i in 0..out.len() {
            out[i] = if self.grid.active[i] { self.ric0[i] - quarter * out[i] } else { self.ric0[i] };
        }
    }

    /// Imposes boundary values; `scale` maps the boundary factor at the
    /// physical time to the value used (identity for unnormalized runs).
    fn fill_boundary(&self, lam: &mut [T], time: T, scale: impl Fn(T, T) -> T) {
        match self.boundary {
            Boundary::Extrapolate => {
                let n = lam.len() - 1;
                lam[n] = T::lit(3.0) * (lam[n - 1] - lam[n - 2]) + lam[n - 3];
            }
            b => {
                for i in self.grid.boundary_indices() {
                    let f = b.factor(time).expect("scaled boundary");
                    lam[i] = scale(f, self.lambda0[i]);
                }
            }
        }
    }

    fn collapse(&self, lam: &[T], t: T) -> FlowError {
        let i = self.grid.active_indices().fold(0, |b, i| if lam[i] < lam[b] { i } else { b });
        let z = self.grid.points[i];
        FlowError::Breakdown { x: z.re.as_f64(), y: z.im.as_f64(), t: t.as_f64(), value: lam[i].as_f64() }
    }

    /// safety·h²·min λ / max(1, max |Ric|_g) over evolving nodes.
    pub fn cfl_bound(&self, lam: &[T], ric: &[T]) -> T {
        let mut min_l = T::infinity();
        let mut max_r = T::one();
        for i in self.grid.active_indices() {
            min_l = min_l.min(lam[i]);
            max_r = max_r.max((ric[i] / lam[i]).abs());
        }
        let h = self.grid.step;
        self.cfl_safety * h * h * min_l / max_r
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Form {
    Metric,
    Potential,
}

/// Extremes recorded at the start of each step.
#[derive(Clone, Copy, Debug)]
pub struct RingEntry<T> {
    pub t: T,
    pub min_lambda: T,
    pub max_lambda: T,
    pub min_scalar: T,
    pub max_scalar: T,
}

/// Snapshot of a grid state at one time.
#[derive(Clone, Debug)]
pub struct Frame<T> {
    /// t for unnormalized runs, s for normalized ones.
    pub time: T,
    pub lambda: Vec<T>,
    pub ricci: Vec<T>,
    /// ψ, or φ̃ for normalized runs.
    pub potential: Vec<T>,
    /// ψ' = log(λ/λ₀), or φ̃'.
    pub potential_rate: Vec<T>,
}

impl<T: Real> Frame<T> {
    pub fn scalar(&self) -> Vec<T> {
        self.ricci.iter().zip(&self.lambda).map(|(&r, &l)| r / l).collect()
    }
}

/// Classical RK4 given the first slope `k1` = f(t, y).
fn rk4<T: Real>(y: &[T], k1: Vec<T>, t: T, dt: T, mut f: impl FnMut(T, &mut [T], &mut [T])) -> Vec<T> {
    let n = y.len();
    let half = T::lit(0.5);
    let mut stage = y.to_vec();
    let mut acc = k1.clone();
    let mut k = k1;
    let weights = [T::one(), T::lit(2.0), T::lit(2.0), T::one()];
    let offsets = [T::zero(), half, half, T::one()];
    for s in 1..4 {
        let c = dt * offsets[s];
        for i in 0..n {
            stage[i] = y[i] + c * k[i];
        }
        f(t + dt * offsets[s], &mut stage, &mut k);
        for i in 0..n {
            acc[i] += weights[s] * k[i];
        }
    }
    let c = dt / T::lit(6.0);
    (0..n).map(|i| y[i] + c * acc[i]).collect()
}

/// Unnormalized flow started from λ₀ at t = 0.
#[derive(Clone, Debug)]
pub struct FlowState<T> {
    pub setup: Arc<FlowSetup<T>>,
    pub form: Form,
    pub t: T,
    pub lambda: Vec<T>,
    pub psi: Vec<T>,
    pub step_count: u64,
    pub ring: VecDeque<RingEntry<T>>,
    /// λ(1) and ψ(1), recorded when the run passes t = 1.
    pub anchor: Option<(Vec<T>, Vec<T>)>,
}

impl<T: Real> FlowState<T> {
    pub fn new(setup: Arc<FlowSetup<T>>, form: Form) -> Self {
        let n = setup.grid.len();
        FlowState {
            lambda: setup.lambda0.clone(),
            psi: vec![T::zero(); n],
            setup,
            form,
            t: T::zero(),
            step_count: 0,
            ring: VecDeque::new(),
            anchor: None,
        }
    }

    pub fn ricci(&self) -> Vec<T> {
        self.setup.ricci(&self.lambda)
    }

    pub fn cfl_bound(&self) -> T {
        self.setup.cfl_bound(&self.lambda, &self.ricci())
    }

    /// λ₀ − t·Ric₀ + ¼Δψ at evolving nodes.
    fn reconstruct_into(&self, t: T, psi: &[T], lam: &mut [T]) {
        let su = &self.setup;
        su.grid.laplacian_into(psi, lam);
        let quarter = T::lit(0.25);
        for i in 0..lam.len() {
            if su.grid.active[i] {
                lam[i] = su.lambda0[i] - t * su.ric0[i] + quarter * lam[i];
            }
        }
        su.fill_boundary(lam, t, |f, l0| f * l0);
    }

    /// max |λ − (λ₀ − t·Ric₀ + ¼Δψ)| / λ over evolving nodes.
    pub fn reconstruction_residual(&self) -> T {
        let mut rec = vec![T::zero(); self.lambda.len()];
        self.reconstruct_into(self.t, &self.psi, &mut rec);
        self.setup
            .grid
            .active_indices()
            .map(|i| ((self.lambda[i] - rec[i]) / self.lambda[i]).abs())
            .fold(T::zero(), T::max)
    }

    fn metric_rhs(su: &FlowSetup<T>, ts: T, st: &mut [T], k: &mut [T], ric: &mut [T], logr: &mut [T]) {
        let n = su.grid.len();
        let lam = &mut st[..n];
        su.fill_boundary(lam, ts, |f, l0| f * l0);
        su.ricci_into(lam, logr, ric);
        for i in 0..n {
            k[i] = if su.grid.active[i] { -ric[i] } else { T::zero() };
            k[n + i] = logr[i];
        }
    }

    /// One RK4 step; `dt` may not exceed `cfl_bound`.
    pub fn step(&mut self, dt: T) -> Result<()> {
        self.step_inner(Some(dt), T::zero()).map(|_| ())
    }

    /// Steps by `dt`, or by min(stability bound, `remaining`) when `dt` is None.
    fn step_inner(&mut self, dt: Option<T>, remaining: T) -> Result<T> {
        let su = self.setup.clone();
        let n = su.grid.len();
        let t = self.t;
        let mut ric = vec![T::zero(); n];
        let mut logr = vec![T::zero(); n];
        let (y, k1) = match self.form {
            Form::Metric => {
                let mut y = self.lambda.clone();
                y.extend_from_slice(&self.psi);
                let mut k1 = vec![T::zero(); 2 * n];
                Self::metric_rhs(&su, t, &mut y, &mut k1, &mut ric, &mut logr);
                (y, k1)
            }
            Form::Potential => {
                su.ricci_into(&self.lambda, &mut logr, &mut ric);
                (self.psi.clone(), logr.clone())
            }
        };
        let dt_max = su.cfl_bound(&self.lambda, &ric);
        if dt_max < T::lit(DT_FLOOR) {
            return Err(su.collapse(&self.lambda, t));
        }
        let dt = match dt {
            Some(dt) if dt > dt_max * T::lit(1.0 + 1e-9) => {
                return Err(FlowError::StepTooLarge { dt: dt.as_f64(), dt_max: dt_max.as_f64() })
            }
            Some(dt) => dt,
            None => dt_max.min(remaining),
        };
        self.record(&ric);
        match self.form {
            Form::Metric => {
                let y = rk4(&y, k1, t, dt, |ts, st, k| Self::metric_rhs(&su, ts, st, k, &mut ric, &mut logr));
                self.lambda.copy_from_slice(&y[..n]);
                self.psi.copy_from_slice(&y[n..]);
                su.fill_boundary(&mut self.lambda, t + dt, |f, l0| f * l0);
            }
            Form::Potential => {
                let mut lam = vec![T::zero(); n];
                let psi = rk4(&y, k1, t, dt, |ts, st, k| {
                    self.reconstruct_into(ts, st, &mut lam);
                    for i in 0..n {
                        k[i] = (lam[i] / su.lambda0[i]).ln();
                    }
                });
                self.psi = psi;
                self.reconstruct_into(t + dt, &self.psi, &mut lam);
                self.lambda = lam;
            }
        }
        self.t = t + dt;
        self.step_count += 1;
        su.check_positive(&self.lambda, self.t)?;
        if let Some(i) = self.psi.iter().position(|v| !v.is_finite()) {
            let z = su.grid.points[i];
            return Err(FlowError::Breakdown { x: z.re.as_f64(), y: z.im.as_f64(), t: self.t.as_f64(), value: f64::NAN });
        }
        Ok(dt)
    }

    fn record(&mut self, ric: &[T]) {
        let e = extremes(&self.setup.grid, self.t, &self.lambda, ric);
        if self.ring.len() == RING {
            self.ring.pop_front();
        }
        self.ring.push_back(e);
    }

    /// Advances to `target` in steps of at most the current stability bound,
    /// stopping at t = 1 to record the normalization anchor.
    pub fn advance_to(&mut self, target: T) -> Result<()> {
        let one = T::one();
        if self.t < one && target > one {
            self.advance_plain(one)?;
        }
        self.advance_plain(target)
    }

    fn advance_plain(&mut self, target: T) -> Result<()> {
        let eps = T::lit(1e-12) * target.abs().max(T::one());
        while target - self.t > eps {
            self.step_inner(None, target - self.t)?;
        }
        self.t = self.t.max(target);
        if self.anchor.is_none() && (self.t - T::one()).abs() <= eps {
            self.anchor = Some((self.lambda.clone(), self.psi.clone()));
        }
        Ok(())
    }

    pub fn frame(&self) -> Frame<T> {
        let rate = self.lambda.iter().zip(&self.setup.lambda0).map(|(&l, &l0)| (l / l0).ln()).collect();
        Frame { time: self.t, lambda: self.lambda.clone(), ricci: self.ricci(), potential: self.psi.clone(), potential_rate: rate }
    }

    /// g̃(s) = e^{−s}g(e^s) with s = log t, and
    /// φ̃ = e^{−s}[ψ(t) − ψ(1) − (t − 1)·log(λ(1)/λ₀) − (s − 1)t − 1],
    /// the closed form of e^{−s}∫₀ˢ e^τ log(ω̃(τ)/ω̃(0)) dτ in terms of ψ.
    pub fn normalize(&self) -> Result<NormalizedFlowState<T>> {
        let (lam1, psi1) = self.anchor.as_ref().ok_or(FlowError::Horizon { requested: 1.0, reached: self.t.as_f64() })?;
        let t = self.t;
        let s = t.ln();
        let e = (-s).exp();
        let g_tilde = self.lambda.iter().map(|&l| l * e).collect();
        let phi = (0..self.lambda.len())
            .map(|i| {
                let shift = (lam1[i] / self.setup.lambda0[i]).ln();
                e * (self.psi[i] - psi1[i] - (t - T::one()) * shift - (s - T::one()) * t - T::one())
            })
            .collect();
        Ok(NormalizedFlowState {
            setup: self.setup.clone(),
            s,
            g_tilde,
            g_tilde0: lam1.clone(),
            phi_tilde: phi,
            step_count: 0,
            fixed_boundary: false,
        })
    }
}

fn extremes<T: Real>(grid: &Grid<T>, t: T, lam: &[T], ric: &[T]) -> RingEntry<T> {
    let mut e = RingEntry {
        t,
        min_lambda: T::infinity(),
        max_lambda: T::neg_infinity(),
        min_scalar: T::infinity(),
        max_scalar: T::neg_infinity(),
    };
    for i in grid.active_indices() {
        let r = ric[i] / lam[i];
        e.min_lambda = e.min_lambda.min(lam[i]);
        e.max_lambda = e.max_lambda.max(lam[i]);
        e.min_scalar = e.min_scalar.min(r);
        e.max_scalar = e.max_scalar.max(r);
    }
    e
}

/// Normalized flow ∂_s g̃ = −Ric(g̃) − g̃ with the potential φ̃ evolved
/// alongside through φ̃' = log(g̃/g̃(0)) − φ̃.
///
/// Boundary values are e^{−s}·b(e^s), b being the unnormalized boundary data,
/// so g̃(0) is understood as g(1) of that run.
#[derive(Clone, Debug)]
pub struct NormalizedFlowState<T> {
    pub setup: Arc<FlowSetup<T>>,
    pub s: T,
    pub g_tilde: Vec<T>,
    pub g_tilde0: Vec<T>,
    pub phi_tilde: Vec<T>,
    pub step_count: u64,
    /// Hold boundary values at g̃(0) instead of deriving them from the
    /// unnormalized boundary data.
    pub fixed_boundary: bool,
}

impl<T: Real> NormalizedFlowState<T> {
    pub fn with_fixed_boundary(mut self) -> Self {
        self.fixed_boundary = true;
        self
    }

    /// Starts at s = 0 from samples of g(1).
    pub fn from_initial(setup: Arc<FlowSetup<T>>, g_tilde0: Vec<T>) -> Result<Self> {
        if g_tilde0.len() != setup.grid.len() {
            return Err(FlowError::Setup("sample count does not match the grid".into()));
        }
        setup.check_positive(&g_tilde0, T::zero())?;
        let n = g_tilde0.len();
        Ok(NormalizedFlowState { setup, s: T::zero(), g_tilde: g_tilde0.clone(), g_tilde0, phi_tilde: vec![T::zero(); n], step_count: 0, fixed_boundary: false })
    }

    pub fn ricci(&self) -> Vec<T> {
        self.setup.ricci(&self.g_tilde)
    }

    pub fn phi_tilde_prime(&self) -> Vec<T> {
        (0..self.g_tilde.len()).map(|i| (self.g_tilde[i] / self.g_tilde0[i]).ln() - self.phi_tilde[i]).collect()
    }

    /// sup |Ric(g̃) + g̃|_g̃ over evolving nodes with |z| ≤ `within`.
    pub fn ke_residual(&self, within: Option<T>) -> T {
        ke_residual(&self.setup.grid, &self.g_tilde, &self.ricci(), within)
    }

    pub fn cfl_bound(&self) -> T {
        self.setup.cfl_bound(&self.g_tilde, &self.ricci())
    }

    fn boundary_at(su: &FlowSetup<T>, g0: &[T], fixed: bool, lam: &mut [T], s: T) {
        if fixed {
            for i in su.grid.boundary_indices() {
                lam[i] = g0[i];
            }
            return;
        }
        let t = s.exp();
        let e = (-s).exp();
        su.fill_boundary(lam, t, |f, l0| e * f * l0);
    }

    /// g̃(s) − [e^{−s}g̃(0) − (1 − e^{−s})Ric(g̃(0)) + ¼Δφ̃], relative to g̃,
    /// maximized over evolving nodes.
    pub fn potential_identity_residual(&self) -> T {
        let su = &self.setup;
        let e = (-self.s).exp();
        let ric0 = su.ricci(&self.g_tilde0);
        let lap = su.grid.laplacian(&self.phi_tilde);
        su.grid
            .active_indices()
            .map(|i| {
                let rec = e * self.g_tilde0[i] - (T::one() - e) * ric0[i] + T::lit(0.25) * lap[i];
                ((self.g_tilde[i] - rec) / self.g_tilde[i]).abs()
            })
            .fold(T::zero(), T::max)
    }

    #[allow(clippy::too_many_arguments)]
    fn rhs(su: &FlowSetup<T>, g0: &[T], fixed: bool, ss: T, st: &mut [T], k: &mut [T], ric: &mut [T], logr: &mut [T]) {
        let n = su.grid.len();
        let (lam, phi) = st.split_at_mut(n);
        Self::boundary_at(su, g0, fixed, lam, ss);
        su.ricci_into(lam, logr, ric);
        for i in 0..n {
            k[i] = if su.grid.active[i] { -ric[i] - lam[i] } else { T::zero() };
            k[n + i] = (lam[i] / g0[i]).ln() - phi[i];
        }
    }

    pub fn step(&mut self, ds: T) -> Result<()> {
        self.step_inner(Some(ds), T::zero()).map(|_| ())
    }

    fn step_inner(&mut self, ds: Option<T>, remaining: T) -> Result<T> {
        let su = self.setup.clone();
        let n = su.grid.len();
        let g0 = &self.g_tilde0;
        let mut ric = vec![T::zero(); n];
        let mut logr = vec![T::zero(); n];
        let mut y = self.g_tilde.clone();
        y.extend_from_slice(&self.phi_tilde);
        let mut k1 = vec![T::zero(); 2 * n];
        let fixed = self.fixed_boundary;
        Self::rhs(&su, g0, fixed, self.s, &mut y, &mut k1, &mut ric, &mut logr);
        let dt_max = su.cfl_bound(&y[..n], &ric);
        if dt_max < T::lit(DT_FLOOR) {
            return Err(su.collapse(&y[..n], self.s));
        }
        let ds = match ds {
            Some(ds) if ds > dt_max * T::lit(1.0 + 1e-9) => {
                return Err(FlowError::StepTooLarge { dt: ds.as_f64(), dt_max: dt_max.as_f64() })
            }
            Some(ds) => ds,
            None => dt_max.min(remaining),
        };
        let y = rk4(&y, k1, self.s, ds, |ss, st, k| Self::rhs(&su, g0, fixed, ss, st, k, &mut ric, &mut logr));
        self.g_tilde.copy_from_slice(&y[..n]);
        self.phi_tilde.copy_from_slice(&y[n..]);
        self.s = self.s + ds;
        Self::boundary_at(&su, &self.g_tilde0, fixed, &mut self.g_tilde, self.s);
        self.step_count += 1;
        su.check_positive(&self.g_tilde, self.s)?;
        Ok(ds)
    }

    pub fn advance_to(&mut self, target: T) -> Result<()> {
        let eps = T::lit(1e-12) * target.abs().max(T::one());
        while target - self.s > eps {
            self.step_inner(None, target - self.s)?;
        }
        self.s = self.s.max(target);
        Ok(())
    }

    pub fn frame(&self) -> Frame<T> {
        Frame {
            time: self.s,
            lambda: self.g_tilde.clone(),
            ricci: self.ricci(),
            potential: self.phi_tilde.clone(),
            potential_rate: self.phi_tilde_prime(),
        }
    }
}

pub fn ke_residual<T: Real>(grid: &Grid<T>, lam: &[T], ric: &[T], within: Option<T>) -> T {
    grid.active_indices()
        .filter(|&i| within.map_or(true, |r| grid.radius(i) <= r))
        .map(|i| (ric[i] / lam[i] + T::one()).abs())
        .fold(T::zero(), T::max)
}

/// Anything that can be advanced in time and sampled.
pub trait Evolution<T: Real> {
    fn time(&self) -> T;
    fn advance_to(&mut self, target: T) -> Result<()>;
    fn frame(&self) -> Frame<T>;
}

impl<T: Real> Evolution<T> for FlowState<T> {
    fn time(&self) -> T {
        self.t
    }
    fn advance_to(&mut self, target: T) -> Result<()> {
        FlowState::advance_to(self, target)
    }
    fn frame(&self) -> Frame<T> {
        FlowState::frame(self)
    }
}

impl<T: Real> Evolution<T> for NormalizedFlowState<T> {
    fn time(&self) -> T {
        self.s
    }
    fn advance_to(&mut self, target: T) -> Result<()> {
        NormalizedFlowState::advance_to(self, target)
    }
    fn frame(&self) -> Frame<T> {
        NormalizedFlowState::frame(self)
    }
}

/// Frames at the requested times, cut short at the first breakdown.
#[derive(Clone, Debug)]
pub struct RunOutcome<T> {
    pub frames: Vec<Frame<T>>,
    pub breakdown: Option<FlowError>,
}

impl<T> RunOutcome<T> {
    pub fn valid(&self) -> bool {
        self.breakdown.is_none()
    }
}

pub fn run<T: Real, E: Evolution<T>>(state: &mut E, times: &[T]) -> RunOutcome<T> {
    let mut frames = Vec::with_capacity(times.len());
    for &t in times {
        if let Err(e) = state.advance_to(t) {
            return RunOutcome { frames, breakdown: Some(e) };
        }
        frames.push(state.frame());
    }
    RunOutcome { frames, breakdown: None }
}

/// Evenly spaced times t₀, t₀ + Δ, ..., t₁ (inclusive).
pub fn frame_times<T: Real>(start: T, end: T, spacing: T) -> Vec<T> {
    let count = ((end - start) / spacing).round().to_usize().unwrap_or(0);
    (0..=count).map(|k| start + spacing * T::from_usize_lossy(k)).collect()
}

/// The node position as a one-point chart coordinate.
pub fn node<T: Real>(grid: &Grid<T>, i: usize) -> [C<T>; 1] {
    [grid.points[i]]
}
