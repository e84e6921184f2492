use thiserror::Error;

/// Errors produced by the symbolic and numeric layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("element is not diagonal: {term} has index {index}")]
    NotDiagonal { term: String, index: i64 },

    #[error("tensor degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: u8, right: u8 },

    #[error("tensor degree {0} is not supported (only 2 and 3)")]
    UnsupportedDegree(u8),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("guard band too small: size {size} must exceed twice the maximal monomial entry {max_entry}")]
    GuardBandTooSmall { size: usize, max_entry: usize },

    #[error("power iteration did not converge within {max_iter} iterations (tol {tol:e})")]
    NoConvergence { max_iter: usize, tol: f64 },

    #[error("{points} sample points cannot separate index spread {spread}")]
    SpreadTooLarge { points: usize, spread: usize },

    #[error("syntax error at byte {offset}: expected {expected}, found {found}")]
    Syntax {
        offset: usize,
        expected: String,
        found: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
