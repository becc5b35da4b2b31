//! Crate-wide error type.

/// Errors produced by the alignment, channel, signaling and analysis layers.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Scheme dimensions outside the supported range.
    #[error("invalid dimensions: {0}")]
    InvalidDims(String),
    /// An enumeration would exceed the configured cap.
    #[error("enumeration cap exceeded: {needed} items requested, cap is {cap}")]
    CapExceeded { needed: u128, cap: u64 },
    /// A gain distribution whose support touches zero (or is otherwise empty).
    #[error("invalid gain distribution: {0}")]
    InvalidDistribution(String),
    /// A direction references a gain absent from the channel realization.
    #[error("unknown gain h[{rx}][{tx}] for this channel")]
    UnknownGain { rx: usize, tx: usize },
    /// A standard-form denominator underflowed the safe tolerance.
    #[error("degenerate division in standard form: {0}")]
    DivisionDegenerate(String),
    /// Folding combination degree does not match the minimal polynomial.
    #[error("degree mismatch: combination degree {combo}, polynomial degree {poly}")]
    DegreeMismatch { combo: usize, poly: usize },
    /// A realization or layout failed a collision guard.
    #[error("degenerate realization: {0}")]
    Degenerate(String),
    /// Invalid constellation or experiment parameters.
    #[error("invalid parameters: {0}")]
    InvalidSpec(String),
    /// A data symbol outside the constellation range.
    #[error("symbol {symbol} outside [-{q}, {q}]")]
    SymbolOutOfRange { symbol: i64, q: u64 },
    /// Exact integer arithmetic overflowed.
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    /// A serialized artifact failed to parse.
    #[error("parse error: {0}")]
    Parse(String),
    /// Underlying I/O failure (message only, to keep the error cloneable).
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
