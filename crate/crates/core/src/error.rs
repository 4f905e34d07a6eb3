use thiserror::Error;

use crate::arith::{NumberType, OddNumber};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a positive odd integer")]
    NotOdd(u128),

    #[error("arithmetic overflow computing {op} at {operand}")]
    Overflow { op: &'static str, operand: u128 },

    #[error("{value} is of type {actual}, expected type {expected}")]
    TypeMismatch {
        value: OddNumber,
        expected: NumberType,
        actual: NumberType,
    },

    #[error("type B argument {0} is not admissible here")]
    TypeBArgument(OddNumber),

    #[error("3^{n}*{x} has rank {rank}, rule five needs rank 1")]
    RankViolation { x: OddNumber, n: u32, rank: u32 },

    #[error("{0} is not a variety number with k >= 1")]
    NotReducible(OddNumber),

    #[error("coloring worklist is exhausted")]
    Exhausted,

    #[error("row {row} did not complete within {budget} ticks")]
    NonTermination { row: u32, budget: u64 },

    #[error("branch revisited {0}")]
    CycleDetected(OddNumber),

    #[error("step budget of {0} exhausted")]
    BudgetExceeded(u64),

    #[error("node {0} is not a head")]
    NotAHead(usize),

    #[error("rule five source {0} is not an A_g number")]
    HeadInvariantViolation(OddNumber),

    #[error(
        "counting identity failed for {what} at {input}: counted {counted}, formula {formula}"
    )]
    IdentityViolation {
        what: &'static str,
        input: u128,
        counted: u128,
        formula: u128,
    },

    #[error("no samples of class {0}")]
    InsufficientSamples(&'static str),

    #[error("least-squares fit is degenerate: {0}")]
    DegenerateFit(&'static str),
}
