//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Division of a scalar by zero.
    #[error("division by zero")]
    DivisionByZero,

    /// Evaluation of a rational function at a point where the denominator vanishes.
    #[error("denominator vanishes at the evaluation point")]
    PoleAtPoint,

    /// A rational function was built with the zero polynomial as denominator.
    #[error("zero polynomial denominator")]
    ZeroDenominator,

    /// A supporter family hit an index whose coefficient 1/(k*a - (k-1)) is
    /// undefined because k*a - (k-1) = 0 for the given rational parameter a.
    #[error("degenerate family parameter: k*a - (k-1) vanishes at k = {k}")]
    DegenerateParameter { k: i64 },

    /// Scaling an operator by zero.
    #[error("scale factor must be nonzero")]
    ZeroScalar,

    /// Inversion requested on a window where the operator coefficient vanishes.
    #[error("operator coefficient vanishes inside the window at {zeros:?}")]
    NotInvertibleOnWindow { zeros: Vec<i64> },

    /// The finite-support search would enumerate more candidates than allowed.
    #[error("search space of {candidates} candidates exceeds the budget of {budget}")]
    SearchSpaceTooLarge { candidates: u128, budget: u128 },

    /// An operator spec or run configuration that does not satisfy its constraints.
    #[error("invalid spec: {0}")]
    InvalidSpec(String),

    /// Malformed textual input (scalars, windows, assignment lists).
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
