//! Scenario and suite files.

use kahler_estimates::BarrierConfig;
use kahler_flow::{Boundary, GridKind};
use kahler_geometry::Catalog64;
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("cannot parse {path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error("invalid scenario '{name}': {}", .violations.join("; "))]
    Invalid { name: String, violations: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub name: String,
    #[serde(default = "default_seed")]
    pub seed: u64,
    /// Directory under the output root; the scenario name when absent.
    pub output: Option<String>,
    pub metrics: MetricsConfig,
    pub chart: Option<ChartConfig>,
    pub flow: Option<FlowConfig>,
    pub barrier: Option<BarrierConfig>,
    #[serde(default)]
    pub checks: Vec<CheckConfig>,
}

fn default_seed() -> u64 {
    7
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricsConfig {
    pub g0: String,
    pub h: Option<String>,
    #[serde(default = "default_dim")]
    pub dim: usize,
}

fn default_dim() -> usize {
    1
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChartConfig {
    pub kind: GridKind,
    /// Radial points, torus side, or disk lattice count per radius.
    pub resolution: usize,
    /// r_max for radial and disk charts, side length for the torus.
    pub extent: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FormConfig {
    Metric,
    Potential,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlowConfig {
    #[serde(default = "default_form")]
    pub form: FormConfig,
    pub boundary: Boundary,
    #[serde(default = "default_safety")]
    pub cfl_safety: f64,
    pub t_max: f64,
    /// Spacing of recorded frames; steps inside a frame follow the stability bound.
    pub frame_dt: f64,
    pub normalized: Option<NormalizedConfig>,
}

fn default_form() -> FormConfig {
    FormConfig::Metric
}
fn default_safety() -> f64 {
    0.2
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NormalizedStart {
    /// Normalize the unnormalized run at t = 1.
    UnitTime,
    /// Start the normalized flow from g₀ itself.
    Initial,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NormalizedConfig {
    pub start: NormalizedStart,
    pub s_max: f64,
    pub frame_ds: f64,
    #[serde(default)]
    pub fixed_boundary: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum CheckConfig {
    /// sup |λ/((1 + rate·t)λ₀) − 1| over all frames.
    ExactHomothety { rate: f64, tolerance: f64 },
    /// sup |λ/λ₀ − 1| and sup |R| over all frames.
    Stationary { tolerance: f64 },
    /// |Ric + g|_g at the last frame.
    KeResidual {
        tolerance: f64,
        within: Option<f64>,
        #[serde(default)]
        normalized: bool,
    },
    ScalarLowerBound { tolerance: f64 },
    RicciInequality { tolerance: f64 },
    ScalarEvolution { tolerance: f64 },
    TraceHeat { tolerance: f64 },
    TraceBarrier {
        tolerance: f64,
        #[serde(default)]
        calibrate: bool,
    },
    PotentialMonotonicity { base: f64, rate: f64 },
    KeConvergence {
        threshold: f64,
        within: f64,
        /// Catalog key of the expected limit.
        exact: Option<String>,
        #[serde(default)]
        expect_divergence: bool,
    },
    ChenSweep { tolerance: f64 },
    CutoffProperties { taus: Vec<f64>, max_k: usize, points: usize },
    ConformalCompletion { tau: f64, rho_i: f64, resolution: usize, agreement: f64 },
    Uniqueness {
        other: String,
        tolerance: f64,
        resolution: usize,
        #[serde(default)]
        expect_rejection: bool,
    },
}

impl CheckConfig {
    pub fn label(&self) -> &'static str {
        match self {
            CheckConfig::ExactHomothety { .. } => "exact-homothety",
            CheckConfig::Stationary { .. } => "stationary",
            CheckConfig::KeResidual { .. } => "ke-residual",
            CheckConfig::ScalarLowerBound { .. } => "scalar-lower-bound",
            CheckConfig::RicciInequality { .. } => "ricci-inequality",
            CheckConfig::ScalarEvolution { .. } => "scalar-evolution",
            CheckConfig::TraceHeat { .. } => "trace-heat",
            CheckConfig::TraceBarrier { .. } => "trace-barrier",
            CheckConfig::PotentialMonotonicity { .. } => "potential-monotonicity",
            CheckConfig::KeConvergence { .. } => "ke-convergence",
            CheckConfig::ChenSweep { .. } => "chen-sweep",
            CheckConfig::CutoffProperties { .. } => "cutoff-properties",
            CheckConfig::ConformalCompletion { .. } => "conformal-completion",
            CheckConfig::Uniqueness { .. } => "uniqueness",
        }
    }

    fn needs_flow(&self) -> bool {
        !matches!(
            self,
            CheckConfig::ChenSweep { .. }
                | CheckConfig::CutoffProperties { .. }
                | CheckConfig::ConformalCompletion { .. }
                | CheckConfig::Uniqueness { .. }
        )
    }

    fn needs_normalized(&self) -> bool {
        matches!(
            self,
            CheckConfig::PotentialMonotonicity { .. }
                | CheckConfig::KeConvergence { .. }
                | CheckConfig::KeResidual { normalized: true, .. }
        )
    }
}

fn positive(v: &mut Vec<String>, what: &str, x: f64) {
    if !(x > 0.0 && x.is_finite()) {
        v.push(format!("{what} must be positive, got {x}"));
    }
}

impl ScenarioConfig {
    pub fn from_toml(text: &str, path: &Path) -> Result<Self, ConfigError> {
        toml::from_str(text).map_err(|e| ConfigError::Parse { path: path.to_path_buf(), message: e.to_string() })
    }

    pub fn output_dir(&self) -> &str {
        self.output.as_deref().unwrap_or(&self.name)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io { path: path.to_path_buf(), source })?;
        Self::from_toml(&text, path)
    }

    /// Every violation at once, against `catalog`.
    pub fn validate(&self, catalog: &Catalog64) -> Result<(), ConfigError> {
        let mut v = Vec::new();
        if self.name.is_empty() {
            v.push("name must not be empty".into());
        }
        let dir = self.output_dir();
        if dir.is_empty() || dir.contains(['/', '\\']) || dir.starts_with('.') {
            v.push(format!("output directory '{dir}' is not a plain directory name"));
        }
        let mut keys = vec![("metrics.g0", self.metrics.g0.clone())];
        if let Some(h) = &self.metrics.h {
            keys.push(("metrics.h", h.clone()));
        }
        for c in &self.checks {
            match c {
                CheckConfig::KeConvergence { exact: Some(k), .. } => keys.push(("ke-convergence.exact", k.clone())),
                CheckConfig::Uniqueness { other, .. } => keys.push(("uniqueness.other", other.clone())),
                _ => {}
            }
        }
        for (field, key) in keys {
            if !catalog.contains(&key) {
                v.push(format!("{field}: unknown metric key '{key}'"));
            }
        }
        if self.metrics.dim == 0 {
            v.push("metrics.dim must be at least 1".into());
        }
        if let Some(f) = &self.flow {
            positive(&mut v, "flow.t_max", f.t_max);
            positive(&mut v, "flow.frame_dt", f.frame_dt);
            positive(&mut v, "flow.cfl_safety", f.cfl_safety);
            if self.chart.is_none() {
                v.push("[flow] needs a [chart]".into());
            }
            if self.metrics.dim != 1 {
                v.push("grid flows need metrics.dim = 1".into());
            }
            if let Some(n) = &f.normalized {
                positive(&mut v, "flow.normalized.s_max", n.s_max);
                positive(&mut v, "flow.normalized.frame_ds", n.frame_ds);
            }
        }
        if let Some(c) = &self.chart {
            positive(&mut v, "chart.extent", c.extent);
            if c.resolution < 8 {
                v.push(format!("chart.resolution must be at least 8, got {}", c.resolution));
            }
        }
        if let Some(b) = &self.barrier {
            if let Err(e) = b.validate() {
                v.push(format!("barrier: {e}"));
            }
        }
        for c in &self.checks {
            let label = c.label();
            if c.needs_flow() && self.flow.is_none() {
                v.push(format!("check {label} needs [flow]"));
            }
            if c.needs_normalized() && self.flow.as_ref().map_or(true, |f| f.normalized.is_none()) {
                v.push(format!("check {label} needs [flow.normalized]"));
            }
            if matches!(c, CheckConfig::TraceHeat { .. } | CheckConfig::TraceBarrier { .. }) && self.metrics.h.is_none() {
                v.push(format!("check {label} needs metrics.h"));
            }
            if matches!(c, CheckConfig::TraceBarrier { .. }) && self.barrier.is_none() {
                v.push(format!("check {label} needs [barrier]"));
            }
            if matches!(c, CheckConfig::ConformalCompletion { .. }) && self.metrics.h.is_none() {
                v.push(format!("check {label} needs metrics.h"));
            }
            match c {
                CheckConfig::CutoffProperties { taus, max_k, points } => {
                    if taus.is_empty() || taus.iter().any(|t| !(*t > 0.0 && *t < 0.125)) {
                        v.push(format!("cutoff-properties: every tau must lie in (0, 1/8), got {taus:?}"));
                    }
                    if *max_k == 0 || *max_k > 4 {
                        v.push(format!("cutoff-properties: max_k must lie in 1..=4, got {max_k}"));
                    }
                    if *points < 10 {
                        v.push("cutoff-properties: points must be at least 10".into());
                    }
                }
                CheckConfig::ConformalCompletion { tau, rho_i, resolution, .. } => {
                    if !(*tau > 0.0 && *tau < 0.125) {
                        v.push(format!("conformal-completion: tau must lie in (0, 1/8), got {tau}"));
                    }
                    if !(*rho_i > 1.0) {
                        v.push(format!("conformal-completion: rho_i must exceed 1, got {rho_i}"));
                    }
                    if *resolution < 2 {
                        v.push("conformal-completion: resolution must be at least 2".into());
                    }
                }
                CheckConfig::Uniqueness { resolution, .. } if *resolution < 2 => {
                    v.push("uniqueness: resolution must be at least 2".into());
                }
                _ => {}
            }
        }
        if v.is_empty() {
            Ok(())
        } else {
            Err(ConfigError::Invalid { name: self.name.clone(), violations: v })
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    /// Scenario files, relative to the manifest.
    #[serde(default)]
    pub scenarios: Vec<PathBuf>,
}

impl Manifest {
    pub fn load(path: &Path) -> Result<(Self, PathBuf), ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io { path: path.to_path_buf(), source })?;
        let m: Manifest =
            toml::from_str(&text).map_err(|e| ConfigError::Parse { path: path.to_path_buf(), message: e.to_string() })?;
        let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok((m, base))
    }
}
