//! Executes one scenario: flow stages, then every configured check.

use crate::artifacts::{self, FrameStage};
use crate::config::{CheckConfig, ConfigError, FlowConfig, FormConfig, NormalizedStart, ScenarioConfig};
use kahler_estimates::{
    chen_ode_oracle, ke_convergence_check, potential_monotonicity_check, ricci_inequality_check,
    scalar_evolution_residual, scalar_lower_bound_check, standard_sweep, trace_barrier_check, trace_heat_residual,
    trace_series, uniqueness_f_check, EstimateReport, SlackTracker, UniquenessError, Verdict,
};
use kahler_exhaustion::{
    conformal_completion, frak_properties_check, polar_samples, profile_rows, ratio_constants, register_cutoff,
    unit_shifted_norm, CompletionSpec, Cutoff64, CutoffSpec,
};
use kahler_flow::{
    frame_times, ke_residual, run, FlowError, FlowSetup, FlowState, Form, Frame64, Grid64, GridKind,
    NormalizedFlowState,
};
use kahler_geometry::{metric_at, Catalog64, Provider64, SamplerConfig, C};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LabError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("setup of '{scenario}' failed: {message}")]
    Setup { scenario: String, message: String },
    #[error("writing artifacts: {0}")]
    Io(#[from] std::io::Error),
    #[error("writing csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("writing json: {0}")]
    Json(#[from] serde_json::Error),
}

impl LabError {
    pub fn is_config(&self) -> bool {
        matches!(self, LabError::Config(_) | LabError::Setup { .. })
    }
}

/// Standard catalog plus the `cutoff` factor (τ = 0.1, ρᵢ = 4).
pub fn lab_catalog() -> Catalog64 {
    let mut c = Catalog64::standard();
    register_cutoff(&mut c, "cutoff", CutoffSpec::new(0.1), 4.0).expect("valid default cutoff");
    c
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BreakdownInfo {
    pub stage: String,
    pub message: String,
    pub x: Option<f64>,
    pub y: Option<f64>,
    pub t: Option<f64>,
}

impl BreakdownInfo {
    fn new(stage: &str, e: &FlowError) -> Self {
        let (x, y, t) = match *e {
            FlowError::Breakdown { x, y, t, .. } => (Some(x), Some(y), Some(t)),
            _ => (None, None, None),
        };
        BreakdownInfo { stage: stage.into(), message: e.to_string(), x, y, t }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub scenario: String,
    pub config: ScenarioConfig,
    pub frames_written: usize,
    pub normalized_frames_written: usize,
    /// Set when a flow stage stopped early; frames up to that point are kept.
    pub breakdown: Option<BreakdownInfo>,
    pub checks: Vec<EstimateReport>,
    pub passed: bool,
    /// Written to timing.json, not report.json, so the report stays byte-stable.
    #[serde(default, skip_serializing)]
    pub wall_time_s: f64,
    pub artifacts: Vec<String>,
}

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Timing {
    pub schema_version: u32,
    pub wall_time_s: f64,
}

pub fn check_ok(r: &EstimateReport) -> bool {
    r.satisfied || r.verdict == Verdict::ExpectedDivergence
}

/// 0 pass, 1 a check failed, 3 a flow broke down.
pub fn exit_code(r: &RunReport) -> i32 {
    if r.breakdown.is_some() {
        3
    } else if r.passed {
        0
    } else {
        1
    }
}

struct Stages {
    setup: Arc<FlowSetup<f64>>,
    frames: Vec<Frame64>,
    normalized: Vec<Frame64>,
    breakdown: Option<BreakdownInfo>,
}

fn grid_of(cfg: &ScenarioConfig) -> Result<Grid64, FlowError> {
    let c = cfg.chart.as_ref().expect("validated");
    Ok(match c.kind {
        GridKind::Radial => Grid64::radial(c.resolution, c.extent)?,
        GridKind::Torus => Grid64::torus(c.resolution, c.extent)?,
        GridKind::Disk => Grid64::disk(c.resolution, c.extent)?,
    })
}

fn run_flow(f: &FlowConfig, setup: Arc<FlowSetup<f64>>) -> Stages {
    let form = match f.form {
        FormConfig::Metric => Form::Metric,
        FormConfig::Potential => Form::Potential,
    };
    let mut state = FlowState::new(setup.clone(), form);
    let out = run(&mut state, &frame_times(0.0, f.t_max, f.frame_dt));
    let mut st = Stages { setup: setup.clone(), frames: out.frames, normalized: Vec::new(), breakdown: None };
    if let Some(e) = out.breakdown {
        st.breakdown = Some(BreakdownInfo::new("flow", &e));
        return st;
    }
    let Some(n) = &f.normalized else { return st };
    let start = match n.start {
        NormalizedStart::UnitTime => {
            if state.t < 1.0 {
                if let Err(e) = state.advance_to(1.0) {
                    st.breakdown = Some(BreakdownInfo::new("flow", &e));
                    return st;
                }
            }
            state.normalize()
        }
        NormalizedStart::Initial => NormalizedFlowState::from_initial(setup.clone(), setup.lambda0.clone()),
    };
    let mut ns = match start {
        Ok(s) => s,
        Err(e) => {
            st.breakdown = Some(BreakdownInfo::new("normalized", &e));
            return st;
        }
    };
    if n.fixed_boundary {
        ns = ns.with_fixed_boundary();
    }
    let s0 = ns.s;
    let out = run(&mut ns, &frame_times(s0, s0 + n.s_max, n.frame_ds));
    st.normalized = out.frames;
    if let Some(e) = out.breakdown {
        st.breakdown = Some(BreakdownInfo::new("normalized", &e));
    }
    st
}

fn node_samples(setup: &FlowSetup<f64>, p: &Provider64) -> Result<Vec<f64>, String> {
    setup
        .grid
        .points
        .iter()
        .map(|z| metric_at(p.as_ref(), std::slice::from_ref(z)).map(|m| m[(0, 0)].re).map_err(|e| e.to_string()))
        .collect()
}

fn pt(setup: &FlowSetup<f64>, i: usize) -> [(f64, f64); 1] {
    let z = setup.grid.points[i];
    [(z.re, z.im)]
}

/// Points on a polar lattice of the disk |z| ≤ r_max in ℂ (all angles).
fn disk_points(r_max: f64, m: usize) -> Vec<Vec<C<f64>>> {
    let mut out = vec![vec![C::new(0.0, 0.0)]];
    for i in 1..=m {
        let r = r_max * i as f64 / m as f64;
        let k = 4 * i;
        for j in 0..k {
            let th = std::f64::consts::TAU * j as f64 / k as f64;
            out.push(vec![C::new(r * th.cos(), r * th.sin())]);
        }
    }
    out
}

fn rel_change(a: f64, b: f64) -> f64 {
    ((a - b) / b.abs().max(1e-300)).abs()
}

struct Ctx<'a> {
    cfg: &'a ScenarioConfig,
    catalog: &'a Catalog64,
    g0: Provider64,
    h: Option<Provider64>,
    stages: Option<&'a Stages>,
    dir: &'a Path,
    written: &'a mut Vec<String>,
}

impl Ctx<'_> {
    fn build(&self, key: &str) -> Result<Provider64, String> {
        self.catalog.build(key, Some(self.cfg.metrics.dim)).map_err(|e| format!("{key}: {e}"))
    }
}

fn evaluate(check: &CheckConfig, cx: &mut Ctx) -> EstimateReport {
    let label = check.label();
    let flow_needed = !matches!(
        check,
        CheckConfig::ChenSweep { .. }
            | CheckConfig::CutoffProperties { .. }
            | CheckConfig::ConformalCompletion { .. }
            | CheckConfig::Uniqueness { .. }
    );
    if flow_needed {
        let st = cx.stages.expect("validated");
        if st.breakdown.is_some() {
            return EstimateReport::not_applicable(label, "flow broke down");
        }
    }
    match evaluate_inner(check, cx) {
        Ok(r) => r,
        Err(msg) => {
            let mut r = EstimateReport::not_applicable(label, &msg);
            r.verdict = Verdict::Fail;
            r
        }
    }
}

fn evaluate_inner(check: &CheckConfig, cx: &mut Ctx) -> Result<EstimateReport, String> {
    let st = cx.stages;
    Ok(match check {
        CheckConfig::ExactHomothety { rate, tolerance } => {
            let st = st.unwrap();
            let s = &st.setup;
            let mut tr = SlackTracker::new("exact-homothety", *tolerance);
            for f in &st.frames {
                for i in 0..s.grid.len() {
                    let exact = (1.0 + rate * f.time) * s.lambda0[i];
                    tr.push(-(f.lambda[i] / exact - 1.0).abs(), &pt(s, i), f.time);
                }
            }
            tr.finish()
        }
        CheckConfig::Stationary { tolerance } => {
            let st = st.unwrap();
            let s = &st.setup;
            let mut tr = SlackTracker::new("stationary", *tolerance);
            let mut worst_scalar = 0.0f64;
            for f in &st.frames {
                let r = f.scalar();
                for i in s.grid.active_indices() {
                    tr.push(-(f.lambda[i] / s.lambda0[i] - 1.0).abs(), &pt(s, i), f.time);
                    tr.push(-r[i].abs(), &pt(s, i), f.time);
                    worst_scalar = worst_scalar.max(r[i].abs());
                }
            }
            tr.finish().note("sup_abs_scalar", worst_scalar)
        }
        CheckConfig::KeResidual { tolerance, within, normalized } => {
            let st = st.unwrap();
            let frames = if *normalized { &st.normalized } else { &st.frames };
            let last = frames.last().ok_or("no frames")?;
            let res = ke_residual(&st.setup.grid, &last.lambda, &last.ricci, *within);
            let mut tr = SlackTracker::new("ke-residual", *tolerance);
            tr.push(-res, &[], last.time);
            tr.finish().note("ke_residual", res)
        }
        CheckConfig::ScalarLowerBound { tolerance } => {
            let st = st.unwrap();
            scalar_lower_bound_check(&st.setup, &st.frames, cx.cfg.metrics.dim, *tolerance)
        }
        CheckConfig::RicciInequality { tolerance } => {
            let st = st.unwrap();
            ricci_inequality_check(&st.setup, &st.frames, *tolerance)
        }
        CheckConfig::ScalarEvolution { tolerance } => {
            let st = st.unwrap();
            let r = scalar_evolution_residual(&st.setup, &st.frames);
            let mut tr = SlackTracker::new("scalar-evolution", 0.0);
            tr.push(tolerance - r.max_abs, &[r.at], r.time);
            tr.finish().note("max_residual", r.max_abs)
        }
        CheckConfig::TraceHeat { tolerance } => {
            let st = st.unwrap();
            let h = cx.h.as_ref().unwrap();
            let r = trace_heat_residual(&st.setup, &st.frames, h.as_ref()).map_err(|e| e.to_string())?;
            let mut tr = SlackTracker::new("trace-heat", 0.0);
            tr.push(tolerance - r.max_abs, &[r.at], r.time);
            tr.finish().note("max_residual", r.max_abs).note("max_terms", r.max_terms)
        }
        CheckConfig::TraceBarrier { tolerance, calibrate } => {
            let st = st.unwrap();
            let h = cx.h.as_ref().unwrap();
            let series = trace_series(&st.setup, &st.frames, h.as_ref()).map_err(|e| e.to_string())?;
            let mut b = cx.cfg.barrier.clone().unwrap();
            if *calibrate {
                b.c1 = b.minimal_c1(&series);
            }
            trace_barrier_check(&series, &b, *tolerance).note("c1", b.c1)
        }
        CheckConfig::PotentialMonotonicity { base, rate } => {
            let st = st.unwrap();
            potential_monotonicity_check(&st.setup, &st.normalized, *base, *rate)
        }
        CheckConfig::KeConvergence { threshold, within, exact, expect_divergence } => {
            let st = st.unwrap();
            let ex = match exact {
                Some(k) => Some(node_samples(&st.setup, &cx.build(k)?)?),
                None => None,
            };
            let r = ke_convergence_check(&st.setup, &st.normalized, ex.as_deref(), *within, *threshold);
            if *expect_divergence {
                r.expect_divergence()
            } else {
                r
            }
        }
        CheckConfig::ChenSweep { tolerance } => {
            let (triples, q0s) = standard_sweep();
            let mut tr = SlackTracker::new("chen-sweep", *tolerance);
            let mut steps = 0usize;
            for &(a, b, t) in &triples {
                for &q0 in &q0s {
                    let o = chen_ode_oracle(a, b, t, q0);
                    steps += o.steps;
                    tr.push(o.slack, &[(a, b)], t);
                }
            }
            tr.finish().note("total_steps", steps as f64)
        }
        CheckConfig::CutoffProperties { taus, max_k, points } => {
            let mut tr = SlackTracker::new("cutoff-properties", 0.0);
            let mut notes = Vec::new();
            for &tau in taus {
                let c = Cutoff64::new(CutoffSpec::new(tau)).map_err(|e| e.to_string())?;
                let r = frak_properties_check(&c, *max_k, *points).map_err(|e| e.to_string())?;
                tr.push(r.worst_slack, &[], tau);
                let fine = ratio_constants(&c, 2 * points).map_err(|e| e.to_string())?;
                let (c2, c3) = (r.noted("c2").unwrap_or(f64::NAN), r.noted("c3").unwrap_or(f64::NAN));
                let drift = rel_change(c2, fine.c2).max(rel_change(c3, fine.c3));
                tr.push(0.1 - drift, &[], tau);
                for (k, v) in &r.notes {
                    notes.push((format!("tau={tau}:{k}"), *v));
                }
                notes.push((format!("tau={tau}:refinement_drift"), drift));
                let rows = profile_rows(&c, 200).map_err(|e| e.to_string())?;
                let name = format!("cutoff_profile_tau{tau}.csv");
                artifacts::write_profile(&cx.dir.join(&name), &rows).map_err(|e| e.to_string())?;
                cx.written.push(name);
            }
            let mut r = tr.finish();
            r.notes.extend(notes);
            r
        }
        CheckConfig::ConformalCompletion { tau, rho_i, resolution, agreement } => {
            let n = cx.cfg.metrics.dim;
            let h = cx.h.clone().unwrap();
            let spec = CompletionSpec { rho: unit_shifted_norm(n), rho_i: *rho_i, cutoff: CutoffSpec::new(*tau) };
            let r_max = ((1.0 - 1e-3) * rho_i - 1.0).max(0.0).sqrt();
            let sampler = SamplerConfig { seed: cx.cfg.seed, ..SamplerConfig::default() };
            let run = |m| {
                conformal_completion(cx.g0.clone(), h.clone(), &spec, &polar_samples(n, r_max, m), &sampler)
                    .map(|c| c.report)
                    .map_err(|e| e.to_string())
            };
            let coarse = run(*resolution)?;
            let fine = run(2 * resolution)?;
            let mut r = fine.estimate(*agreement);
            let drift = rel_change(coarse.c, fine.c);
            if coarse.c.is_finite() && fine.c.is_finite() && drift > 0.1 {
                r.satisfied = false;
                r.verdict = Verdict::Fail;
            }
            r.note("c_coarse", coarse.c).note("refinement_drift", drift).note("samples", fine.samples as f64)
        }
        CheckConfig::Uniqueness { other, tolerance, resolution, expect_rejection } => {
            let w2 = cx.build(other)?;
            let pts = disk_points(0.85, *resolution);
            let mut tr = SlackTracker::new("uniqueness", 0.0);
            match uniqueness_f_check(cx.g0.as_ref(), w2.as_ref(), &pts) {
                Ok(d) => {
                    let sup = d.sup_f.abs().max(d.inf_f.abs());
                    if *expect_rejection {
                        tr.push(-1.0, &[], 0.0);
                    } else {
                        tr.push(tolerance - sup, &[], 0.0);
                    }
                    tr.finish().note("sup_abs_f", sup).note("ke_residual", d.ke_residual)
                }
                Err(UniquenessError::NotKahlerEinstein { which, residual, .. }) => {
                    tr.push(if *expect_rejection { 0.0 } else { -1.0 }, &[], 0.0);
                    tr.finish().note("rejected_input", which as f64).note("ke_residual", residual)
                }
                Err(e) => return Err(e.to_string()),
            }
        }
    })
}

/// Runs `cfg`, writing artifacts into `out_root/<name>/`.
pub fn run_scenario(cfg: &ScenarioConfig, out_root: &Path) -> Result<RunReport, LabError> {
    let catalog = lab_catalog();
    cfg.validate(&catalog)?;
    let clock = Instant::now();
    let setup_err = |message: String| LabError::Setup { scenario: cfg.name.clone(), message };
    let g0 = catalog.build(&cfg.metrics.g0, Some(cfg.metrics.dim)).map_err(|e| setup_err(e.to_string()))?;
    let h = match &cfg.metrics.h {
        Some(k) => Some(catalog.build(k, Some(cfg.metrics.dim)).map_err(|e| setup_err(e.to_string()))?),
        None => None,
    };
    let stages = match &cfg.flow {
        Some(f) => {
            let grid = grid_of(cfg).map_err(|e| setup_err(e.to_string()))?;
            let setup = FlowSetup::new(grid, g0.as_ref(), f.boundary)
                .map_err(|e| setup_err(e.to_string()))?
                .with_safety(f.cfl_safety);
            Some(run_flow(f, Arc::new(setup)))
        }
        None => None,
    };
    let dir: PathBuf = out_root.join(cfg.output_dir());
    std::fs::create_dir_all(&dir)?;
    let mut written = Vec::new();
    let mut checks = Vec::new();
    {
        let mut cx = Ctx { cfg, catalog: &catalog, g0, h, stages: stages.as_ref(), dir: &dir, written: &mut written };
        for c in &cfg.checks {
            checks.push(evaluate(c, &mut cx));
        }
    }
    let (mut nf, mut nn, mut breakdown) = (0, 0, None);
    if let Some(st) = &stages {
        let stage_frames = [(FrameStage::Flow, &st.frames[..]), (FrameStage::Normalized, &st.normalized[..])];
        artifacts::write_frames(&dir.join("frames.csv"), &st.setup, &stage_frames)?;
        artifacts::write_summary(&dir.join("summary.csv"), &st.setup, &stage_frames)?;
        written.push("frames.csv".into());
        written.push("summary.csv".into());
        nf = st.frames.len();
        nn = st.normalized.len();
        breakdown = st.breakdown.clone();
    }
    written.push("report.json".into());
    written.push("timing.json".into());
    written.sort();
    let report = RunReport {
        schema_version: REPORT_SCHEMA_VERSION,
        scenario: cfg.name.clone(),
        config: cfg.clone(),
        frames_written: nf,
        normalized_frames_written: nn,
        breakdown,
        passed: checks.iter().all(check_ok),
        checks,
        wall_time_s: clock.elapsed().as_secs_f64(),
        artifacts: written,
    };
    artifacts::write_json(&dir.join("report.json"), &report)?;
    artifacts::write_json(&dir.join("timing.json"), &Timing { schema_version: 1, wall_time_s: report.wall_time_s })?;
    Ok(report)
}
