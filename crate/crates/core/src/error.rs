use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A decision could not be made before the precision cap was reached.
    #[error("insufficient precision in {op} (reached {bits} bits)")]
    InsufficientPrecision { op: &'static str, bits: u32 },

    #[error("{op}: outside the domain ({interval})")]
    Domain { op: &'static str, interval: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("continued fraction expansion too short: {0}")]
    ExpansionTooShort(String),

    /// Every tried convergent gave a non-positive (or undecidable) xi.
    #[error("reduction failed after trying {} convergents", tried.len())]
    ReductionFailed {
        tried: Vec<crate::reduction::TriedConvergent>,
    },

    /// A recomputed quantity disagrees with its expected value.
    #[error("discrepancy: {0}")]
    Discrepancy(String),
}
