//! `plot`: one SVG per quantity from the CSV files of a run directory.

use crate::svg::line_chart;
use std::path::{Path, PathBuf};

fn read(path: &Path) -> Result<(Vec<String>, Vec<csv::StringRecord>), csv::Error> {
    let mut r = csv::Reader::from_path(path)?;
    let head = r.headers()?.iter().map(String::from).collect();
    let rows = r.records().collect::<Result<_, _>>()?;
    Ok((head, rows))
}

fn num(s: &str) -> f64 {
    s.parse().unwrap_or(f64::NAN)
}

/// Writes `<dir>/plots/*.svg` and returns the files written.
pub fn plot_run(dir: &Path) -> Result<Vec<PathBuf>, Box<dyn std::error::Error>> {
    let out = dir.join("plots");
    std::fs::create_dir_all(&out)?;
    let mut written = Vec::new();
    let summary = dir.join("summary.csv");
    if summary.exists() {
        let (head, rows) = read(&summary)?;
        for stage in ["flow", "normalized"] {
            let sel: Vec<_> = rows.iter().filter(|r| r.get(0) == Some(stage)).collect();
            if sel.is_empty() {
                continue;
            }
            let x_label = if stage == "flow" { "t" } else { "s" };
            for (k, col) in head.iter().enumerate().skip(2) {
                let pts: Vec<_> = sel.iter().map(|r| (num(&r[1]), num(&r[k]))).collect();
                let p = out.join(format!("{stage}-{col}.svg"));
                std::fs::write(&p, line_chart(&format!("{col} ({stage})"), x_label, col, &pts))?;
                written.push(p);
            }
        }
    }
    let mut profiles: Vec<_> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.file_name().and_then(|n| n.to_str()).is_some_and(|n| n.starts_with("cutoff_profile") && n.ends_with(".csv")))
        .collect();
    profiles.sort();
    for prof in profiles {
        let (head, rows) = read(&prof)?;
        let stem = prof.file_stem().unwrap().to_string_lossy().into_owned();
        for (k, col) in head.iter().enumerate().skip(1) {
            let pts: Vec<_> = rows.iter().map(|r| (num(&r[0]), num(&r[k]))).collect();
            let p = out.join(format!("{stem}-{col}.svg"));
            std::fs::write(&p, line_chart(&format!("{col} ({stem})"), "s", col, &pts))?;
            written.push(p);
        }
    }
    if written.is_empty() {
        return Err(format!("{} has no summary.csv or cutoff profiles", dir.display()).into());
    }
    Ok(written)
}
