use kahler_lab::config::{CheckConfig, Manifest};
use kahler_lab::{lab_catalog, ConfigError, ScenarioConfig};
use std::path::Path;

fn dir() -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios")
}

#[test]
fn bundled_scenarios_parse_and_validate() {
    let (m, base) = Manifest::load(&dir().join("suite.toml")).unwrap();
    let cat = lab_catalog();
    let mut on_disk: Vec<_> = std::fs::read_dir(dir())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .filter(|n| n != "suite.toml")
        .collect();
    on_disk.sort();
    let mut listed: Vec<_> = m.scenarios.iter().map(|p| p.to_string_lossy().into_owned()).collect();
    listed.sort();
    assert_eq!(on_disk, listed);
    let mut names = std::collections::BTreeSet::new();
    for rel in &m.scenarios {
        let c = ScenarioConfig::load(&base.join(rel)).unwrap();
        c.validate(&cat).unwrap_or_else(|e| panic!("{}: {e}", rel.display()));
        assert!(names.insert(c.name.clone()), "duplicate name {}", c.name);
        assert!(!c.checks.is_empty());
    }
}

#[test]
fn round_trip_through_toml() {
    let c = ScenarioConfig::load(&dir().join("hyperbolic-bump-normalized.toml")).unwrap();
    let back: ScenarioConfig = toml::from_str(&toml::to_string(&c).unwrap()).unwrap();
    assert_eq!(c, back);
}

#[test]
fn violations_are_collected() {
    let text = r#"
name = "a/b"
[metrics]
g0 = "conformal:euclidean:nothing"
h = "mystery"
dim = 2
[chart]
kind = "radial"
resolution = 4
extent = -1.0
[flow]
boundary = { kind = "frozen" }
t_max = 0.0
frame_dt = 0.1
[[checks]]
kind = "trace-barrier"
tolerance = 0.0
[[checks]]
kind = "cutoff-properties"
taus = [0.2]
max_k = 5
points = 100
"#;
    let c = ScenarioConfig::from_toml(text, Path::new("x.toml")).unwrap();
    let Err(ConfigError::Invalid { violations, .. }) = c.validate(&lab_catalog()) else { panic!() };
    let all = violations.join("\n");
    for needle in [
        "directory name",
        "conformal:euclidean:nothing",
        "mystery",
        "flow.t_max",
        "dim = 1",
        "chart.extent",
        "chart.resolution",
        "needs [barrier]",
        "tau",
        "max_k",
    ] {
        assert!(all.contains(needle), "{needle} not reported in\n{all}");
    }
}

#[test]
fn check_kinds_are_tagged() {
    let c: CheckConfig = toml::from_str("kind = \"ke-convergence\"\nthreshold = 0.1\nwithin = 0.9\n").unwrap();
    assert!(matches!(c, CheckConfig::KeConvergence { exact: None, expect_divergence: false, .. }));
    assert!(toml::from_str::<CheckConfig>("kind = \"ke-convergence\"\nthreshold = 0.1\nwithin = 0.9\nextra = 1\n").is_err());
    assert!(toml::from_str::<CheckConfig>("kind = \"nonsense\"\n").is_err());
}
