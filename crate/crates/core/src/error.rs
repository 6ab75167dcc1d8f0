//! The error type shared by every layer of the crate.

use thiserror::Error;

/// Failures of symbolic operations, local analysis and reduction.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("operation applied to the zero operator")]
    ZeroOperator,
    #[error("Euler transform collapsed the operator to order 0")]
    CollapsedToFunction,
    #[error("polynomial does not split over Q(parameters): {0}")]
    NonSplitting(String),
    #[error("Newton polygon slope {0} is outside {{0, 1, 2}}")]
    SlopeOutOfRange(String),
    #[error("exponents are not semi-simple: {0}")]
    NonSemiSimple(String),
    #[error("recurrence is resonant at step {step} with a nonzero right-hand side")]
    ResonantRecurrence { step: usize },
    #[error("point {0} is not a regular singular point")]
    NotRegularPoint(String),
    #[error("blocks at one point become integer-separated: {0}")]
    BlockCollision(String),
    #[error("Euler transform degenerates to order 0; use the terminal collapse")]
    Degenerate,
    #[error("table has no class with exponential factor of rank 0")]
    NoZeroClass,
    #[error("lattice index {0} does not belong to the table shape")]
    IndexMismatch(String),
    #[error("table is not rigid (index {index}): {certificate}")]
    NotRigid { index: i64, certificate: String },
    #[error("prediction and computed table disagree at step {step}: {detail}")]
    CrossValidationFailure { step: usize, detail: String },
    #[error("inverse script does not reproduce the operator: {0}")]
    RoundTripFailure(String),
    #[error("fresh parameter clashes with an existing one: {0}")]
    ParameterClash(String),
    #[error("denominator vanishes at the requested limit: {0}")]
    PoleAtLimit(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error at line {line}, column {column}: expected {expected}")]
    Parse { line: usize, column: usize, expected: String },
}

pub type Result<T> = std::result::Result<T, Error>;
