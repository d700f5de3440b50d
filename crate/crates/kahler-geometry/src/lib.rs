//! Pointwise complex differential geometry of Hermitian metrics on a single
//! coordinate chart: Chern connection, torsion, curvature, holomorphic
//! sectional curvature, trace evolution terms and conformal changes.
//!
//! Everything is generic over the real scalar (`f32` or `f64`); the `*64`
//! aliases below fix `f64`.

pub mod catalog;
pub mod conformal;
pub mod curvature;
pub mod error;
pub mod fd;
pub mod field;
pub mod frames;
pub mod hsc;
pub mod jet;
pub mod linalg;
pub mod models;
pub mod provider;
pub mod pullback;
pub mod royden;
pub mod sampling;
pub mod scalar;
pub mod tensor;
pub mod trace;

pub use catalog::Catalog;
pub use curvature::{
    chern_connection, chern_curvature, kahler_identity_residual, package_from_jet, torsion, upper,
    CurvaturePackage,
};
pub use error::GeomError;
pub use fd::{Differencing, FdProvider, Stencil};
pub use field::{ScalarField, ScalarJet, SharedField};
pub use frames::nabla_bar_torsion_norm;
pub use hsc::{hsc_max, HscReport, SamplerConfig};
pub use jet::MetricJet;
pub use linalg::CMat;
pub use provider::{jet, metric_at, MetricProvider, SharedProvider};
pub use royden::{royden_check, RoydenReport};
pub use scalar::{Real, C};
pub use trace::{trace_and_terms, TraceDiagnostics, TraceInputs};

pub type Complex64 = C<f64>;
pub type CMat64 = CMat<f64>;
pub type Jet64 = MetricJet<f64>;
pub type Package64 = CurvaturePackage<f64>;
pub type Provider64 = SharedProvider<f64>;
pub type Field64 = SharedField<f64>;
pub type Catalog64 = Catalog<f64>;
pub type HscReport64 = HscReport<f64>;
pub type TraceDiagnostics64 = TraceDiagnostics<f64>;

pub type CMat32 = CMat<f32>;
pub type Provider32 = SharedProvider<f32>;
