//! Scenario files, the runner that executes them, run artifacts and the
//! suite-level verification table.

pub mod artifacts;
pub mod config;
pub mod plot;
pub mod runner;
pub mod svg;
pub mod verify;

pub use config::{CheckConfig, ConfigError, Manifest, ScenarioConfig};
pub use runner::{check_ok, exit_code, lab_catalog, run_scenario, BreakdownInfo, LabError, RunReport};
pub use verify::{render_table, verify, Verification, VerificationRow};

/// Environment variable naming the output root.
pub const OUT_ENV: &str = "KAHLER_LAB_OUT";
