//! Suite runs and the master verification table.

use crate::artifacts::{write_atomic, write_json};
use crate::config::{Manifest, ScenarioConfig};
use crate::runner::{check_ok, exit_code, run_scenario, LabError};
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationRow {
    pub scenario: String,
    pub check: String,
    pub verdict: String,
    pub ok: bool,
    pub worst_slack: Option<f64>,
    pub tolerance: f64,
    pub samples: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScenarioOutcome {
    pub scenario: String,
    pub exit_code: i32,
    pub breakdown: Option<String>,
    /// Console only; kept out of verification.json.
    #[serde(default, skip_serializing)]
    pub wall_time_s: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verification {
    pub schema_version: u32,
    pub scenarios: Vec<ScenarioOutcome>,
    pub rows: Vec<VerificationRow>,
    pub config_errors: Vec<String>,
    pub warnings: Vec<String>,
    pub exit_code: i32,
}

pub const VERIFICATION_SCHEMA_VERSION: u32 = 1;

/// Runs every scenario of the manifest. A scenario that fails to load is
/// reported and skipped; the others still run.
pub fn verify(manifest: &Path, out_root: &Path) -> Result<Verification, LabError> {
    let (m, base) = Manifest::load(manifest)?;
    let mut v = Verification {
        schema_version: VERIFICATION_SCHEMA_VERSION,
        scenarios: Vec::new(),
        rows: Vec::new(),
        config_errors: Vec::new(),
        warnings: Vec::new(),
        exit_code: 0,
    };
    if m.scenarios.is_empty() {
        v.warnings.push(format!("{} lists no scenarios", manifest.display()));
    }
    let mut worst = 0;
    for rel in &m.scenarios {
        let path = base.join(rel);
        let outcome = ScenarioConfig::load(&path).map_err(LabError::from).and_then(|cfg| run_scenario(&cfg, out_root));
        match outcome {
            Ok(r) => {
                for c in &r.checks {
                    v.rows.push(VerificationRow {
                        scenario: r.scenario.clone(),
                        check: c.name.clone(),
                        verdict: serde_json::to_value(c.verdict).ok().and_then(|x| x.as_str().map(String::from)).unwrap_or_default(),
                        ok: check_ok(c),
                        worst_slack: c.worst_slack.is_finite().then_some(c.worst_slack),
                        tolerance: c.tolerance_used,
                        samples: c.samples,
                    });
                }
                let code = exit_code(&r);
                worst = rank(worst, code);
                v.scenarios.push(ScenarioOutcome {
                    scenario: r.scenario.clone(),
                    exit_code: code,
                    breakdown: r.breakdown.as_ref().map(|b| b.message.clone()),
                    wall_time_s: r.wall_time_s,
                });
            }
            Err(e) if e.is_config() => {
                v.config_errors.push(format!("{}: {e}", path.display()));
                worst = rank(worst, 2);
            }
            Err(e) => return Err(e),
        }
    }
    v.exit_code = worst;
    std::fs::create_dir_all(out_root)?;
    write_table(&out_root.join("verification.csv"), &v.rows)?;
    write_json(&out_root.join("verification.json"), &v)?;
    Ok(v)
}

/// Precedence: configuration error, breakdown, check failure, pass.
fn rank(a: i32, b: i32) -> i32 {
    let order = |c: i32| match c {
        2 => 3,
        3 => 2,
        1 => 1,
        _ => 0,
    };
    if order(b) > order(a) {
        b
    } else {
        a
    }
}

fn write_table(path: &Path, rows: &[VerificationRow]) -> std::io::Result<()> {
    write_atomic(path, |w| {
        let mut c = csv::Writer::from_writer(w);
        for r in rows {
            c.serialize(r).map_err(std::io::Error::other)?;
        }
        c.flush()
    })
}

/// Plain-text rendering of the table.
pub fn render_table(v: &Verification) -> String {
    let mut out = format!("{:<34} {:<24} {:<20} {:>12}\n", "scenario", "check", "verdict", "worst slack");
    for r in &v.rows {
        let slack = r.worst_slack.map_or("-".to_string(), |s| format!("{s:.3e}"));
        out.push_str(&format!("{:<34} {:<24} {:<20} {:>12}\n", r.scenario, r.check, r.verdict, slack));
    }
    for s in &v.scenarios {
        if let Some(b) = &s.breakdown {
            out.push_str(&format!("{:<34} {:<24} {:<20} {b}\n", s.scenario, "flow", "breakdown"));
        }
    }
    let total: f64 = v.scenarios.iter().map(|s| s.wall_time_s).sum();
    out.push_str(&format!("{} scenarios, {} checks, {total:.1}s\n", v.scenarios.len(), v.rows.len()));
    out
}
