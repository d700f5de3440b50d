//! Files written per run. Every file lands via a temporary sibling and a rename.

use kahler_exhaustion::{write_profile_csv, ProfileRow};
use kahler_flow::{ke_residual, FlowSetup, Frame64};
use serde::Serialize;
use std::io::Write;
use std::path::Path;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FrameStage {
    Flow,
    Normalized,
}

impl FrameStage {
    pub fn as_str(self) -> &'static str {
        match self {
            FrameStage::Flow => "flow",
            FrameStage::Normalized => "normalized",
        }
    }
}

pub fn write_atomic(path: &Path, fill: impl FnOnce(&mut dyn Write) -> std::io::Result<()>) -> std::io::Result<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    {
        let mut w = std::io::BufWriter::new(tmp.as_file_mut());
        fill(&mut w)?;
        w.flush()?;
    }
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn csv_io(e: csv::Error) -> std::io::Error {
    std::io::Error::other(e)
}

pub fn write_frames(path: &Path, setup: &FlowSetup<f64>, stages: &[(FrameStage, &[Frame64])]) -> std::io::Result<()> {
    write_atomic(path, |w| {
        let mut c = csv::Writer::from_writer(w);
        c.write_record(["stage", "time", "node", "x", "y", "evolving", "lambda", "ricci", "scalar", "potential", "potential_rate"])
            .map_err(csv_io)?;
        for (stage, frames) in stages {
            for f in *frames {
                let r = f.scalar();
                for i in 0..setup.grid.len() {
                    let z = setup.grid.points[i];
                    c.write_record(&[
                        stage.as_str().to_string(),
                        f.time.to_string(),
                        i.to_string(),
                        z.re.to_string(),
                        z.im.to_string(),
                        u8::from(setup.grid.active[i]).to_string(),
                        f.lambda[i].to_string(),
                        f.ricci[i].to_string(),
                        r[i].to_string(),
                        f.potential[i].to_string(),
                        f.potential_rate[i].to_string(),
                    ])
                    .map_err(csv_io)?;
                }
            }
        }
        c.flush()
    })
}

pub const SUMMARY_COLUMNS: [&str; 7] =
    ["stage", "time", "min_lambda", "max_lambda", "min_scalar", "max_scalar", "ke_residual"];

pub fn write_summary(path: &Path, setup: &FlowSetup<f64>, stages: &[(FrameStage, &[Frame64])]) -> std::io::Result<()> {
    write_atomic(path, |w| {
        let mut c = csv::Writer::from_writer(w);
        c.write_record(SUMMARY_COLUMNS).map_err(csv_io)?;
        for (stage, frames) in stages {
            for f in *frames {
                let r = f.scalar();
                let mut ext = [f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY];
                for i in setup.grid.active_indices() {
                    ext[0] = ext[0].min(f.lambda[i]);
                    ext[1] = ext[1].max(f.lambda[i]);
                    ext[2] = ext[2].min(r[i]);
                    ext[3] = ext[3].max(r[i]);
                }
                let ke = ke_residual(&setup.grid, &f.lambda, &f.ricci, None);
                let mut row = vec![stage.as_str().to_string(), f.time.to_string()];
                row.extend(ext.iter().chain([&ke]).map(|v| v.to_string()));
                c.write_record(&row).map_err(csv_io)?;
            }
        }
        c.flush()
    })
}

pub fn write_profile(path: &Path, rows: &[ProfileRow]) -> std::io::Result<()> {
    write_atomic(path, |w| write_profile_csv(rows, w).map_err(csv_io))
}

pub fn write_json<S: Serialize>(path: &Path, value: &S) -> std::io::Result<()> {
    write_atomic(path, |w| {
        serde_json::to_writer_pretty(&mut *w, value).map_err(std::io::Error::other)?;
        w.write_all(b"\n")
    })
}
