//! Crate-wide error type.
//!
//! All index tuples appearing in error messages are 1-based, matching the
//! convention used by the public API and the JSON formats.

use thiserror::Error;

/// A realism violation: pictures at `i` and `j` disagree on the overlap
/// selected by `r` and `s` (where `i_r = j_s`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealismViolation {
    pub i: Vec<usize>,
    pub j: Vec<usize>,
    pub r: Vec<usize>,
    pub s: Vec<usize>,
}

impl std::fmt::Display for RealismViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "pictures at i={:?} and j={:?} disagree on overlap r={:?}, s={:?}",
            self.i, self.j, self.r, self.s
        )
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("index {index:?} out of range for shape {shape:?}")]
    Bounds { index: Vec<usize>, shape: Vec<usize> },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("integer overflow in exact arithmetic")]
    Overflow,

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("album is not realistic: {0}")]
    Realism(RealismViolation),

    #[error("matrix is not balanced: {0}")]
    Balance(String),

    #[error("instance too large: {0}")]
    Capacity(String),

    #[error("malformed structure: {0}")]
    Structure(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
