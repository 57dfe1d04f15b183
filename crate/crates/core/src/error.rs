use thiserror::Error;

/// Errors raised by the solvers and their configuration.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    Config(String),

    /// Density at an interior cell is zero, negative or not finite.
    #[error("non-positive density {value:e} at cell ({i}, {j})")]
    NonPositiveDensity { i: usize, j: usize, value: f64 },

    #[error("non-finite value in field `{field}` at cell ({i}, {j})")]
    NonFinite { field: &'static str, i: usize, j: usize },

    #[error("shape mismatch: expected {expected:?}, found {found:?}")]
    ShapeMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn config<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Config(msg.into()))
}
