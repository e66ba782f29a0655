use thiserror::Error;

pub type Result<T, E = NcError> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NcError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("representations live on different quivers")]
    QuiverMismatch,

    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),

    #[error("quiver has a directed cycle through vertex {0}")]
    Cyclic(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid weight sequence: {0}")]
    InvalidWeight(String),

    #[error("weight sequence {0} is not of Dynkin type")]
    NotDynkinType(String),

    #[error("not an exceptional pair: {0}")]
    NotExceptionalPair(String),

    #[error("hom space is zero, nothing to evaluate")]
    ZeroHom,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("integer overflow in exact arithmetic")]
    Overflow,

    /// Broken algebraic invariant: negative ext, non-intertwining morphism,
    /// a mutation that is neither injective nor surjective, etc.
    #[error("integrity error: {0}")]
    Integrity(String),
}

impl NcError {
    /// `true` for errors that indicate corrupted internal state rather than
    /// bad user input.
    pub fn is_integrity(&self) -> bool {
        matches!(self, NcError::Integrity(_) | NcError::Overflow)
    }
}
