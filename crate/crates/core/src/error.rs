//! Error type shared by every evaluator.

use std::fmt;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The problem parameters themselves are invalid (N = 0, non-integer N, alpha at a pole).
    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    /// `sin(alpha)` was not strictly positive.
    #[error("degenerate angle: sin(alpha) = {0} must be > 0")]
    DegenerateAngle(f64),

    /// The working precision was too small, or a big-float computation overflowed.
    #[error("precision failure: {0}")]
    PrecisionFailure(String),

    /// A truncation order exceeded its hard safety cap.
    #[error("truncation failure: order {order} exceeds cap {cap}")]
    TruncationFailure { order: usize, cap: usize },

    /// Panel doubling ran out of refinements.
    #[error("quadrature did not converge: last two estimates {last} and {previous}")]
    NonConvergence { last: f64, previous: f64 },

    /// A pivot of the tridiagonal factorization was not positive.
    #[error("positivity failure: pivot {pivot} at row {row}")]
    Positivity { row: usize, pivot: f64 },

    /// A truncation dimension below the minimum the problem needs.
    #[error("dimension {got} below required minimum {min}")]
    Dimension { got: usize, min: usize },

    #[error("empty input: {0}")]
    EmptyInput(&'static str),
}

/// Coarse classification used by the CLI exit codes and the bench CSV.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ErrorClass {
    Domain,
    InvalidProblem,
    PrecisionFailure,
    TruncationFailure,
    NonConvergence,
    Positivity,
    Dimension,
    EmptyInput,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Domain(_) | Error::DegenerateAngle(_) => ErrorClass::Domain,
            Error::InvalidProblem(_) => ErrorClass::InvalidProblem,
            Error::PrecisionFailure(_) => ErrorClass::PrecisionFailure,
            Error::TruncationFailure { .. } => ErrorClass::TruncationFailure,
            Error::NonConvergence { .. } => ErrorClass::NonConvergence,
            Error::Positivity { .. } => ErrorClass::Positivity,
            Error::Dimension { .. } => ErrorClass::Dimension,
            Error::EmptyInput(_) => ErrorClass::EmptyInput,
        }
    }

    /// True for failures of the numerics, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self.class(),
            ErrorClass::PrecisionFailure
                | ErrorClass::TruncationFailure
                | ErrorClass::NonConvergence
                | ErrorClass::Positivity
        )
    }
}

impl ErrorClass {
    pub fn as_str(self) -> &'static str {
        match self {
            ErrorClass::Domain => "domain-error",
            ErrorClass::InvalidProblem => "invalid-problem",
            ErrorClass::PrecisionFailure => "precision-failure",
            ErrorClass::TruncationFailure => "truncation-failure",
            ErrorClass::NonConvergence => "non-convergence",
            ErrorClass::Positivity => "positivity-failure",
            ErrorClass::Dimension => "dimension-error",
            ErrorClass::EmptyInput => "empty-input",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [
            ErrorClass::Domain,
            ErrorClass::InvalidProblem,
            ErrorClass::PrecisionFailure,
            ErrorClass::TruncationFailure,
            ErrorClass::NonConvergence,
            ErrorClass::Positivity,
            ErrorClass::Dimension,
            ErrorClass::EmptyInput,
        ]
        .into_iter()
        .find(|c| c.as_str() == s)
    }
}

impl fmt::Display for ErrorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}
