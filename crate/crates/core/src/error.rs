//! Crate-wide error type.

use thiserror::Error;

/// Errors raised by constructors, loaders, and bound computations.
#[derive(Debug, Error)]
pub enum Error {
    /// A probability sat outside `[0, 1]`.
    #[error("invalid probability {value} at position {index}: must lie in [0,1]")]
    InvalidProbability { index: usize, value: f64 },

    /// Empty marginal sequence or weight table.
    #[error("sequence must contain at least one entry")]
    Empty,

    /// `mass_threshold` asked for more cumulative mass than exists.
    #[error("insufficient-mass: total mass {total} is below the requested threshold {needed}")]
    InsufficientMass { total: f64, needed: f64 },

    /// An operation requiring `min_k p_k > 0` saw a zero marginal.
    #[error("zero-lower-mass: marginal at position {index} is 0")]
    ZeroLowerMass { index: usize },

    /// A bound was fed a profile of the wrong coefficient family.
    #[error("family mismatch: expected a {expected} profile, got {got}")]
    FamilyMismatch {
        expected: &'static str,
        got: &'static str,
    },

    /// Intersection band too narrow for the requested spacing.
    #[error("insufficient-band: bandwidth {have} cannot cover pairs up to gap {need}")]
    InsufficientBand { have: usize, need: usize },

    /// A required pairwise intersection entry was absent.
    #[error("missing-pairs: no intersection entry for pair ({i},{j})")]
    MissingPair { i: usize, j: usize },

    /// Exact coefficient enumeration would exceed the event budget.
    #[error(
        "past-too-large: exact coefficient at lag {lag} would enumerate events over \
         2^{needed} atoms, above the max_past budget of {cap}; lower N or the lag"
    )]
    PastTooLarge {
        lag: usize,
        needed: usize,
        cap: usize,
    },

    /// Event index outside `1..=N`.
    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    /// Residue class label outside `1..=L+1`.
    #[error("spaced class {r} out of range 1..={classes}")]
    ClassOutOfRange { r: usize, classes: usize },

    /// Any other parameter violation, with a human-readable reason.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Malformed text input (CSV or similar).
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Malformed binary table file.
    #[error("malformed table file: {0}")]
    MalformedTable(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid<S: Into<String>>(msg: S) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
