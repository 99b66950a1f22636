use thiserror::Error;

use crate::pdiag::PdiagWitness;
use crate::roots::RootWitness;

/// Errors raised by the max-plus operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid scalar {0}: only finite values and -inf are allowed")]
    InvalidScalar(f64),

    #[error("invalid tolerance {0}: must be finite and nonnegative")]
    InvalidTolerance(f64),

    #[error("matrix must have at least one row and one column")]
    EmptyMatrix,

    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedRows { row: usize, expected: usize, found: usize },

    #[error("{op}: shape mismatch between {left:?} and {right:?}")]
    ShapeMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("{op}: matrix must be square, got {rows}x{cols}")]
    NotSquare {
        op: &'static str,
        rows: usize,
        cols: usize,
    },

    #[error("{op}: matrix must be finite (entry ({row}, {col}) is eps)")]
    NotFinite {
        op: &'static str,
        row: usize,
        col: usize,
    },

    #[error("{op}: dimension must be at least {min}, got {found}")]
    DimensionTooSmall {
        op: &'static str,
        min: usize,
        found: usize,
    },

    #[error("{op}: exponent {found} is below the minimum {min}")]
    ExponentTooSmall {
        op: &'static str,
        min: usize,
        found: usize,
    },

    #[error("the zeroth power is only defined for finite matrices")]
    ZeroPowerOfNonFinite,

    #[error("invalid permutation: {0:?} is not a bijection of 0..n")]
    InvalidPermutation(Vec<usize>),

    #[error("{op}: vector has length {found}, expected {expected}")]
    VectorLength {
        op: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("{op}: the all-eps vector is not allowed")]
    EpsilonVector { op: &'static str },

    #[error("{op}: value at position {index} must be finite")]
    NonFiniteValue { op: &'static str, index: usize },

    #[error("{op}: the maximum cycle mean is eps (no cycles)")]
    Acyclic { op: &'static str },

    #[error("matrix is not pseudo-diagonalizable: {0}")]
    NotPseudoDiagonalizable(PdiagWitness),

    #[error("matrix has no optimal node")]
    NotOptimalNode,

    #[error("matrix is not separable")]
    NotSeparable,

    #[error("root condition fails: {0}")]
    RootConditionFails(RootWitness),

    #[error("counterexample hypothesis not met: {0}")]
    HypothesisNotMet(String),

    #[error("line {line}, column {column}: cannot parse `{token}`")]
    ParseToken {
        line: usize,
        column: usize,
        token: String,
    },

    #[error("line {line}: ragged row with {found} entries, expected {expected}")]
    ParseRagged {
        line: usize,
        expected: usize,
        found: usize,
    },

    #[error("input contains no matrix rows")]
    ParseEmpty,
}

impl Error {
    /// True for errors caused by malformed input text or arguments, as
    /// opposed to a well-formed input that violates an operation's precondition.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidScalar(_)
                | Error::InvalidTolerance(_)
                | Error::EmptyMatrix
                | Error::RaggedRows { .. }
                | Error::ParseToken { .. }
                | Error::ParseRagged { .. }
                | Error::ParseEmpty
        )
    }
}
