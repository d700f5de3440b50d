use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_kahler-lab"))
}

fn scenarios() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios")
}

fn lab(args: &[&str], out: &Path) -> Output {
    bin().args(args).env("KAHLER_LAB_OUT", out).output().unwrap()
}

fn text(o: &Output) -> String {
    format!("{}{}", String::from_utf8_lossy(&o.stdout), String::from_utf8_lossy(&o.stderr))
}

fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

const SMALL_FLOW: &str = r#"
name = "small"
[metrics]
g0 = "poincare-disk"
[chart]
kind = "radial"
resolution = 32
extent = 0.95
[flow]
boundary = { kind = "homothety", rate = 2.0 }
t_max = 0.2
frame_dt = 0.02
[[checks]]
kind = "exact-homothety"
rate = 2.0
tolerance = TOL
"#;

#[test]
fn unknown_metric_key_is_named_and_all_violations_listed() {
    let d = tempfile::tempdir().unwrap();
    let cfg = write(
        d.path(),
        "bad.toml",
        r#"
name = "bad"
[metrics]
g0 = "no-such-metric"
[[checks]]
kind = "scalar-lower-bound"
tolerance = 1e-8
"#,
    );
    let o = lab(&["run", cfg.to_str().unwrap()], d.path());
    assert_eq!(o.status.code(), Some(2), "{}", text(&o));
    let t = text(&o);
    assert!(t.contains("no-such-metric"), "{t}");
    assert!(t.contains("needs [flow]"), "{t}");
}

#[test]
fn unknown_field_is_a_config_error() {
    let d = tempfile::tempdir().unwrap();
    let cfg = write(d.path(), "typo.toml", &SMALL_FLOW.replace("TOL", "1e-8").replace("t_max", "tmax"));
    let o = lab(&["run", cfg.to_str().unwrap()], d.path());
    assert_eq!(o.status.code(), Some(2), "{}", text(&o));
    assert!(text(&o).contains("tmax"));
}

#[test]
fn empty_manifest_passes_with_warning() {
    let d = tempfile::tempdir().unwrap();
    let m = write(d.path(), "empty.toml", "scenarios = []\n");
    let o = lab(&["verify", m.to_str().unwrap()], d.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
    assert!(d.path().join("verification.csv").exists());
}

#[test]
fn broken_tolerance_fails_and_names_the_check() {
    let d = tempfile::tempdir().unwrap();
    let cfg = write(d.path(), "tight.toml", &SMALL_FLOW.replace("TOL", "1e-20"));
    let m = write(d.path(), "suite.toml", "scenarios = [\"tight.toml\"]\n");
    let o = lab(&["verify", m.to_str().unwrap()], &d.path().join("out"));
    assert_eq!(o.status.code(), Some(1), "{}", text(&o));
    let line = String::from_utf8_lossy(&o.stdout).lines().find(|l| l.contains("exact-homothety")).map(String::from).unwrap();
    assert!(line.contains("fail"), "{line}");
    let o = lab(&["run", cfg.to_str().unwrap()], &d.path().join("out"));
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn artifacts_are_deterministic() {
    let d = tempfile::tempdir().unwrap();
    let cfg = write(d.path(), "small.toml", &SMALL_FLOW.replace("TOL", "1e-8"));
    for k in ["a", "b"] {
        let o = lab(&["run", cfg.to_str().unwrap()], &d.path().join(k));
        assert_eq!(o.status.code(), Some(0), "{}", text(&o));
    }
    for f in ["frames.csv", "summary.csv", "report.json"] {
        let a = std::fs::read(d.path().join("a/small").join(f)).unwrap();
        let b = std::fs::read(d.path().join("b/small").join(f)).unwrap();
        assert!(!a.is_empty());
        assert_eq!(a, b, "{f} differs");
    }
    let frames = std::fs::read_to_string(d.path().join("a/small/frames.csv")).unwrap();
    // 11 frames of 32 nodes plus the header.
    assert_eq!(frames.lines().count(), 11 * 32 + 1);
    let left: Vec<_> = std::fs::read_dir(d.path().join("a/small")).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(left.len(), 4, "stray temporary files: {left:?}");
}

#[test]
fn breakdown_keeps_partial_frames() {
    let d = tempfile::tempdir().unwrap();
    let cfg = write(
        d.path(),
        "cap.toml",
        r#"
name = "collapsing-cap"
[metrics]
g0 = "fubini-study"
[chart]
kind = "radial"
resolution = 33
extent = 0.9
[flow]
boundary = { kind = "homothety", rate = -2.0 }
t_max = 0.7
frame_dt = 0.05
[[checks]]
kind = "scalar-lower-bound"
tolerance = 1e-8
"#,
    );
    let o = lab(&["run", cfg.to_str().unwrap()], d.path());
    assert_eq!(o.status.code(), Some(3), "{}", text(&o));
    let rep: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(d.path().join("collapsing-cap/report.json")).unwrap()).unwrap();
    let t = rep["breakdown"]["t"].as_f64().unwrap();
    assert!(t <= 0.5 + 1e-9, "{t}");
    let frames = rep["frames_written"].as_u64().unwrap();
    assert!(frames >= 9 && frames <= 11, "{frames}");
    assert_eq!(rep["checks"][0]["verdict"], "not-applicable");
    assert!(d.path().join("collapsing-cap/frames.csv").exists());
}

#[test]
fn list_metrics_shows_cutoff_factor() {
    let d = tempfile::tempdir().unwrap();
    let o = lab(&["list-metrics"], d.path());
    assert_eq!(o.status.code(), Some(0));
    let t = text(&o);
    for key in ["poincare-disk", "torsion-example-1", "cutoff", "bump"] {
        assert!(t.contains(key), "{key} missing");
    }
}

#[test]
fn plot_writes_one_svg_per_quantity() {
    let d = tempfile::tempdir().unwrap();
    let cfg = write(d.path(), "small.toml", &SMALL_FLOW.replace("TOL", "1e-8"));
    assert_eq!(lab(&["run", cfg.to_str().unwrap()], d.path()).status.code(), Some(0));
    let o = lab(&["plot", d.path().join("small").to_str().unwrap()], d.path());
    assert_eq!(o.status.code(), Some(0), "{}", text(&o));
    let mut names: Vec<_> =
        std::fs::read_dir(d.path().join("small/plots")).unwrap().map(|e| e.unwrap().file_name().into_string().unwrap()).collect();
    names.sort();
    assert_eq!(names, ["flow-ke_residual.svg", "flow-max_lambda.svg", "flow-max_scalar.svg", "flow-min_lambda.svg", "flow-min_scalar.svg"]);
    let svg = std::fs::read_to_string(d.path().join("small/plots/flow-max_lambda.svg")).unwrap();
    assert!(svg.starts_with("<svg") && svg.contains("<path d=\"M"));
}

#[test]
fn poincare_homothety_scenario_reaches_einstein_metric() {
    let d = tempfile::tempdir().unwrap();
    let cfg = scenarios().join("poincare-homothety.toml");
    let o = lab(&["run", cfg.to_str().unwrap()], d.path());
    assert_eq!(o.status.code(), Some(0), "{}", text(&o));
    let rep: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(d.path().join("poincare-homothety/report.json")).unwrap()).unwrap();
    let ke = rep["checks"].as_array().unwrap().iter().find(|c| c["name"] == "ke-residual").unwrap();
    let v = ke["notes"].as_array().unwrap().iter().find(|n| n[0] == "ke_residual").unwrap()[1].as_f64().unwrap();
    assert!(v <= 1e-8, "{v}");
}

#[test]
fn flat_torus_scenario_is_stationary() {
    let d = tempfile::tempdir().unwrap();
    let cfg = scenarios().join("flat-torus-stationary.toml");
    let o = lab(&["run", cfg.to_str().unwrap()], d.path());
    assert_eq!(o.status.code(), Some(0), "{}", text(&o));
    let rep: kahler_lab::RunReport =
        serde_json::from_str(&std::fs::read_to_string(d.path().join("flat-torus-stationary/report.json")).unwrap()).unwrap();
    for c in &rep.checks {
        assert!(c.satisfied && c.tolerance_used <= 1e-12, "{c:?}");
    }
}

#[test]
fn missing_scenario_file_is_a_manifest_error() {
    let d = tempfile::tempdir().unwrap();
    write(d.path(), "ok.toml", &SMALL_FLOW.replace("TOL", "1e-8"));
    let m = write(d.path(), "suite.toml", "scenarios = [\"ok.toml\", \"absent.toml\"]\n");
    let o = lab(&["verify", m.to_str().unwrap()], &d.path().join("out"));
    assert_eq!(o.status.code(), Some(2), "{}", text(&o));
    assert!(text(&o).contains("absent.toml"));
    // the readable scenario still ran
    assert!(d.path().join("out/small/report.json").exists());
    let o = lab(&["verify", d.path().join("nowhere.toml").to_str().unwrap()], d.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn output_directory_can_be_renamed() {
    let d = tempfile::tempdir().unwrap();
    let body = SMALL_FLOW.replace("TOL", "1e-8").replace("name = \"small\"", "name = \"small\"\noutput = \"elsewhere\"");
    let cfg = write(d.path(), "small.toml", &body);
    assert_eq!(lab(&["run", cfg.to_str().unwrap()], d.path()).status.code(), Some(0));
    assert!(d.path().join("elsewhere/frames.csv").exists());
    assert!(!d.path().join("small").exists());
}
