//! Error type shared by system validation, pressure backends, and solvers.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("a cookie-cutter map needs at least 2 branches, got {0}")]
    TooFewBranches(usize),

    #[error("branch interval [{a}, {b}] must satisfy 0 <= a < b <= 1")]
    InvalidInterval { a: f64, b: f64 },

    #[error(
        "branch intervals [{a0}, {b0}] and [{a1}, {b1}] overlap or touch; strict gaps are required"
    )]
    OverlappingIntervals { a0: f64, b0: f64, a1: f64, b1: f64 },

    #[error("branch on [{a}, {b}] is not uniformly expanding: sup psi' = {sup} >= 1")]
    NotExpanding { a: f64, b: f64, sup: f64 },

    #[error("quadratic branch on [{a}, {b}] is not monotone: |epsilon| = {eps} >= 1")]
    NonMonotone { a: f64, b: f64, eps: f64 },

    #[error("point {0} lies in a gap or outside every branch interval")]
    OutsideDomain(f64),

    #[error("symbol {symbol} out of range for a {n}-branch system")]
    SymbolOutOfRange { symbol: usize, n: usize },

    #[error("symbolic words must be non-empty")]
    EmptyWord,

    #[error("invalid probability vector: {0}")]
    BadWeights(String),

    #[error("power iteration did not converge within {max_iter} iterations")]
    PowerIterationDiverged { max_iter: usize },

    #[error("operation requires an all-affine system")]
    NotAffine,

    #[error("non-finite value encountered at t = {t}")]
    NonFiniteValue { t: f64 },

    #[error("Newton iteration did not converge within {max_iter} iterations")]
    MaxIterationsExceeded { max_iter: usize },

    #[error("no sign change on the expanded search interval [{lo}, {hi}]")]
    NoRootBracket { lo: f64, hi: f64 },

    #[error("alpha = {alpha} is outside the attainable exponent range")]
    AlphaOutOfRange { alpha: f64 },

    #[error("pressure is affine-degenerate (all slopes equal): the Legendre transform collapses")]
    DegeneratePressure,
}

pub type Result<T> = std::result::Result<T, Error>;
