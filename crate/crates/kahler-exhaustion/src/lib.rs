//! Cutoff profile 𝔉 and conformal completions e^{2𝔉(ρ/ρᵢ)} g.

pub mod completion;
pub mod cutoff;
pub mod profile;
pub mod properties;
pub mod quad;

pub use completion::{
    conformal_completion, equivalence_constant, mixed_nabla_bar_torsion, polar_samples, register_cutoff,
    unit_shifted_norm, CompletedMetric, Completion, CompletionReport, CompletionSpec, CutoffField,
};
pub use cutoff::{Cutoff, CutoffError, CutoffSpec, QUAD_TOL};
pub use profile::{profile_rows, write_profile_csv, ProfileRow};
pub use properties::{frak_properties_check, profile_sweep, ratio_constants, ratio_radius, RatioConstants};
pub use quad::{integrate, QuadResult};

#[derive(Debug, thiserror::Error)]
pub enum CompletionError {
    #[error(transparent)]
    Cutoff(#[from] CutoffError),
    #[error(transparent)]
    Geometry(#[from] kahler_geometry::GeomError),
}

pub type Cutoff64 = Cutoff<f64>;
pub type Completion64 = Completion<f64>;
