//! Checks of estimates, barriers and monotone quantities along computed
//! flows, and the ODE oracle behind the t·q bound.

pub mod barrier;
pub mod chen;
pub mod normalized;
pub mod report;
pub mod scalar;
pub mod trace;
pub mod uniqueness;

pub use barrier::{trace_barrier_check, trace_series, BarrierConfig, BarrierError};
pub use chen::{chen_bound, chen_ode_oracle, riccati_exact, standard_sweep, ChenOutcome};
pub use normalized::{ke_convergence_check, potential_monotonicity_check};
pub use report::{EstimateReport, Location, SlackTracker, Verdict};
pub use scalar::{
    ricci_inequality_check, ricci_inequality_slack, scalar_evolution_residual, scalar_lower_bound_check,
    IdentityResidual,
};
pub use trace::{trace_heat_residual, TraceRunResidual};
pub use uniqueness::{uniqueness_f_check, UniquenessDiag, UniquenessError, KE_TOLERANCE};
