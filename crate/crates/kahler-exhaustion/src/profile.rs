//! CSV export of the cutoff profile.

use crate::cutoff::{Cutoff, CutoffError};
use serde::Serialize;
use std::io::Write;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ProfileRow {
    pub s: f64,
    pub f: f64,
    pub phi: f64,
    pub frak: f64,
    pub frak_prime: f64,
}

/// `points` rows with s uniform on [0, 1 − τ·10⁻⁴].
pub fn profile_rows(c: &Cutoff<f64>, points: usize) -> Result<Vec<ProfileRow>, CutoffError> {
    let top = 1.0 - c.tau * 1e-4;
    (0..points)
        .map(|j| {
            let s = top * j as f64 / (points.max(2) - 1) as f64;
            let j2 = c.frak_jet2(s)?;
            Ok(ProfileRow { s, f: c.f(s)?, phi: c.phi_jet(s)[0], frak: j2[0], frak_prime: j2[1] })
        })
        .collect()
}

pub fn write_profile_csv<W: Write>(rows: &[ProfileRow], out: W) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}
