//! The golden automaton: quiver construction, the black/gold/blue
//! coloring game and the single-branch chain follower.

mod branch;
mod coloring;
mod dot;
mod quiver;

pub use branch::{
    follow_a_branch, macro_step, trace_a_branch, Chain, ChainStep, StopReason, DEFAULT_CHAIN_BUDGET,
};
pub use coloring::{
    conjecture1_check, run_rows, CellState, ColoringState, ConjectureOutcome, Provenance,
    RowReport, RunConfig, Schedule, StepOutcome, DEFAULT_TICK_BUDGET,
};
pub use dot::export_quiver_dot;
pub use quiver::{build_quiver, NodeInfo, Quiver};
