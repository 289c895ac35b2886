//! Error type shared by every module.

use thiserror::Error;

/// Failures reported by the engine and its front ends.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("cone is not sharp")]
    NotSharp,
    #[error("monoid generators are not a saturated Hilbert basis: {0}")]
    NotSaturated(String),
    #[error("derivation fixpoint is not a monomial ideal")]
    NotMonomialFixpoint,
    #[error("monomial part is not principal: {0}")]
    NotBalanced(String),
    #[error("no maximal contact on chart {chart}: basis [{basis}]")]
    NoMaximalContact { chart: String, basis: String },
    #[error("center has no generators")]
    EmptyCenter,
    #[error("pullback not divisible by the exceptional power: {0}")]
    NotDivisible(String),
    #[error("blowup budget of {0} exhausted")]
    DepthExceeded(usize),
    #[error("strict transforms blown up at different stages: {0}")]
    NotSynchronized(String),
}

impl Error {
    /// Stable machine-readable kind name.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "ParseError",
            Error::Invalid(_) => "InvalidInput",
            Error::NotSharp => "NotSharp",
            Error::NotSaturated(_) => "NotSaturated",
            Error::NotMonomialFixpoint => "NotMonomialFixpoint",
            Error::NotBalanced(_) => "NotBalanced",
            Error::NoMaximalContact { .. } => "NoMaximalContact",
            Error::EmptyCenter => "EmptyCenter",
            Error::NotDivisible(_) => "NotDivisible",
            Error::DepthExceeded(_) => "DepthExceeded",
            Error::NotSynchronized(_) => "NotSynchronized",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
