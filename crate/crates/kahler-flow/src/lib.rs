//! Explicit time integration of the Chern-Ricci flow on grids over a
//! one-dimensional chart: radial profiles, periodic tori and disks.

pub mod boundary;
pub mod flow;
pub mod grid;

pub use boundary::Boundary;
pub use flow::{
    frame_times, ke_residual, run, Evolution, FlowError, FlowSetup, FlowState, Form, Frame, NormalizedFlowState,
    RingEntry, RunOutcome, DEGENERATE, DT_FLOOR,
};
pub use grid::{Grid, GridError, GridKind};

pub type Grid64 = Grid<f64>;
pub type FlowState64 = FlowState<f64>;
pub type NormalizedFlowState64 = NormalizedFlowState<f64>;
pub type Frame64 = Frame<f64>;
