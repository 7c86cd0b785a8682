//! Crate-wide error type.

use num_bigint::BigUint;
use thiserror::Error;

use crate::geometry::Point;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A construction would exceed the configured resource budget. Carries
    /// the offending intermediate quantity so callers can report what blew up.
    #[error("resource limit: {quantity} would reach {needed}, budget allows {limit}")]
    ResourceLimit {
        quantity: &'static str,
        needed: BigUint,
        limit: BigUint,
    },

    /// A coloring was queried at a point outside its domain. Signals that the
    /// caller assembled mismatched sets; never ignored silently.
    #[error("point {point} is not in the coloring domain")]
    MissingPoint { point: Point },

    /// Pigeonhole scan found no repeated color. Impossible when the coloring
    /// respects its arity bound, so this flags an arity violation.
    #[error("no repeated color among {points} points ({context})")]
    NoRepeat { points: usize, context: String },

    /// An extracted witness failed its own post-hoc validity check. Indicates
    /// an implementation bug, never an expected outcome.
    #[error("internal proof error: {0}")]
    InternalProof(String),

    /// An operation was called outside its stated preconditions.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A file did not conform to one of the `gallai-*` text formats.
    #[error("format error at line {line}: {message}")]
    Format { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn format(line: usize, message: impl Into<String>) -> Self {
        Error::Format {
            line,
            message: message.into(),
        }
    }

    pub fn precondition(message: impl Into<String>) -> Self {
        Error::Precondition(message.into())
    }
}
