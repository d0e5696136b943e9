//! Error type shared across the crate.
//!
//! Only conditions a correct caller can run into at runtime are errors:
//! enumeration guards (user-supplied n too large for exhaustive listing),
//! structure-notation parsing, and root-search convergence. Contract
//! violations that indicate a bug (inexact division inside a recurrence,
//! out-of-domain arguments to the pure counting functions) panic instead.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Exhaustive enumeration was asked for an n outside its guard.
    #[error("{what} supports 1 <= n <= {max}, got {n}")]
    EnumerationGuard {
        what: &'static str,
        n: usize,
        max: usize,
    },

    /// The bracketed root search for the saddle point did not converge.
    #[error("saddle point search did not converge within {budget} bisection steps")]
    SaddleSearch { budget: usize },

    /// Structure text does not match the notation grammar.
    #[error("malformed structure text: {0}")]
    Malformed(String),

    /// A label occurs more than once in structure text.
    #[error("duplicate label {0}")]
    DuplicateLabel(u32),

    /// A label lies outside 1..=n.
    #[error("label {label} out of range 1..={n}")]
    LabelOutOfRange { label: u32, n: usize },

    /// A label in 1..=n is absent from the structure text.
    #[error("missing label {0}")]
    MissingLabel(u32),
}

pub type Result<T> = std::result::Result<T, Error>;
