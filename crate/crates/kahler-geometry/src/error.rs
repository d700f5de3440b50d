use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("degenerate metric: smallest eigenvalue {min_eigenvalue:e}")]
    Degenerate { min_eigenvalue: f64 },
    #[error("point {point} lies outside the chart of `{label}`")]
    OutsideChart { label: String, point: String },
    #[error("`{label}` supplies derivatives up to order {available}, {needed} required")]
    DerivativeOrder { label: String, needed: usize, available: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("metric is not Hermitian: defect {defect:e}")]
    NotHermitian { defect: f64 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unknown catalog key `{0}`")]
    UnknownKey(String),
}
