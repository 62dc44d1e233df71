//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors produced by exact-arithmetic operations, combinatorial
/// constructions, and verification sweeps.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Matrix shape does not meet a precondition (non-square, asymmetric,
    /// mismatched dimensions).
    #[error("shape error: {0}")]
    Shape(String),

    /// Two combinatorial objects that must have equal size do not.
    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    /// An argument is outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The input violates a stated promise (e.g. a partition with a single
    /// nonzero part where two species are required).
    #[error("promise violation: {0}")]
    Promise(String),

    /// The tensor-space dimension d^n exceeds the configured budget.
    #[error("dimension budget exceeded: d^n = {dim} > {budget}")]
    DimBudget { dim: u128, budget: u128 },

    /// Subgroup closure grew past the configured element budget.
    #[error("element budget exceeded: closure passed {budget} elements")]
    ElementBudget { budget: usize },

    /// A requested point lies outside the achievable region.
    #[error("infeasible: {0}")]
    Infeasible(String),

    /// An internal identity that must hold exactly failed; signals a bug.
    #[error("internal consistency error: {0}")]
    Inconsistency(String),

    /// Malformed textual input.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
