//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid group ({context}): {reason}")]
    InvalidGroup { context: String, reason: String },

    #[error("invalid module ({context}): {reason}")]
    InvalidModule { context: String, reason: String },

    #[error("invalid crossed extension ({context}): {reason}")]
    InvalidCrossedExtension { context: String, reason: String },

    #[error("invalid section: {0}")]
    InvalidSection(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("not a complex: d_out * d_in is nonzero at column {column}")]
    NotAComplex { column: usize },

    #[error("not a cocycle (nonzero coboundary at tuple index {tuple})")]
    NotACocycle { tuple: usize },

    #[error("degree {degree} exceeds the supported maximum {max}")]
    DegreeUnsupported { degree: usize, max: usize },

    #[error("size guard exceeded: computation needs {needed} cells, cap is {cap}")]
    SizeGuard { needed: u64, cap: u64 },

    #[error("enumeration budget exceeded: needs {needed} states, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },

    #[error("search budget exhausted after {visited} branches")]
    BudgetExhausted { visited: u64 },

    #[error("group has an element of order two (element {element})")]
    TwoTorsionPresent { element: usize },

    #[error("incompatible flavor pair: {from} does not embed in {to}")]
    FlavorPair { from: String, to: String },

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("document error ({path}): {reason}")]
    Document { path: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
