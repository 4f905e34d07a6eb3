//! Equivalence rules over odd numbers under the Collatz map, the golden
//! automaton that propagates them from 1, a hydra-game simulator and the
//! counting metrics built on top.
//!
//! Every equivalence the library emits can be checked against the
//! brute-force orbit oracle in [`arith::equivalent_oracle`].

pub mod arith;
pub mod automaton;
pub mod error;
pub mod export;
pub mod hydra;
pub mod metrics;
pub mod rules;

pub use arith::{
    apply_action, ascend, classify_type, equivalent_oracle, invert_action, orbit, rank, syr,
    verticality, Action, NumberType, OddNumber, OracleVerdict, Orbit, Verticality,
    DEFAULT_STEP_BOUND,
};
pub use automaton::{
    build_quiver, conjecture1_check, export_quiver_dot, follow_a_branch, run_rows, trace_a_branch,
    CellState, Chain, ChainStep, ColoringState, ConjectureOutcome, Quiver, RowReport, RunConfig,
    Schedule, StopReason,
};
pub use error::{Error, Result};
pub use hydra::{heads_up_to, is_ag, map_run_to_cuts, HydraTree};
pub use rules::{EquivalenceClaim, RuleId, RuleParams, Variety};
