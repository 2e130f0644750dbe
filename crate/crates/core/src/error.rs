use crate::cf::ContinuedFraction;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed real spec `{input}`: {reason}")]
    Parse { input: String, reason: String },

    #[error("requested {requested} bits but the decimal literal only carries {available}")]
    PrecisionExceedsLiteral { requested: u32, available: u32 },

    #[error("comparison not certified at {bits} bits (cap {cap} bits): {context}")]
    Certification { bits: u32, cap: u32, context: String },

    #[error("certified only {certified} of {requested} continued-fraction terms")]
    CfDepth {
        certified: usize,
        requested: usize,
        prefix: ContinuedFraction,
    },

    #[error("comparison at denominator {b} is undecidable within the literal's uncertainty")]
    UntrustedComparison { b: u64 },

    #[error("full sample retention for bmax {bmax} exceeds the cap {cap}")]
    RetentionCap { bmax: u64, cap: u64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
