use kahler_geometry::Real;
use serde::{Deserialize, Serialize};

/// Values imposed at non-evolving nodes.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Boundary {
    /// λ held at its initial value.
    Frozen,
    /// λ_b(t) = (1 + rate·t)·λ₀, the exact solution when Ric₀ = −rate·λ₀.
    Homothety { rate: f64 },
    /// Cubic extrapolation from the three nearest interior nodes (radial grids only).
    Extrapolate,
}

impl Boundary {
    /// Scale factor applied to λ₀ at time t, when the condition is of that type.
    pub fn factor<T: Real>(&self, t: T) -> Option<T> {
        match *self {
            Boundary::Frozen => Some(T::one()),
            Boundary::Homothety { rate } => Some(T::one() + T::lit(rate) * t),
            Boundary::Extrapolate => None,
        }
    }
}
