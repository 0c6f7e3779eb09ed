use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a supported prime modulus")]
    BadModulus(u32),
    #[error("{0} is not odd; this construction needs an odd prime")]
    EvenModulus(u32),
    #[error("not a unit")]
    NotAUnit,
    #[error("pole at zero")]
    PoleAtZero,
    #[error("ragged matrix: row {row} has {len} entries, expected {expected}")]
    Ragged { row: usize, len: usize, expected: usize },
    #[error("index {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),
    #[error("not partial-Brauer: block of size {0}")]
    NotPartialBrauer(usize),
    #[error("not in Q: row {0} has two nonzero entries")]
    RowConflict(usize),
    #[error("not in Q: column {0} has two nonzero entries")]
    ColumnConflict(usize),
    #[error("parameter must be nonzero")]
    ZeroParameter,
    #[error("scale guard exceeded: {what} needs {needed}, limit is {limit}")]
    ScaleGuard { what: String, needed: u128, limit: u128 },
    #[error("bi-invariance violated at {0}")]
    BiInvariance(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Fails with `ScaleGuard` when `needed > limit`.
pub fn guard(what: &str, needed: u128, limit: u128) -> Result<()> {
    if needed > limit {
        return Err(Error::ScaleGuard { what: what.to_string(), needed, limit });
    }
    Ok(())
}
