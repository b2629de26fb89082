use thiserror::Error;

/// Errors raised by the invariant evaluators and the input parsers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("invalid knot: {0}")]
    InvalidKnot(String),

    #[error("invalid angle: {0}")]
    InvalidAngle(String),

    #[error("the trivial angle (omega = 1) is not allowed here")]
    TrivialAngle,

    #[error("expected a torus knot, got {0}")]
    NotTorus(String),

    #[error("{0} and {1} are not coprime")]
    NotCoprime(String, String),

    #[error("invalid fraction: {0}")]
    InvalidFraction(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The character induces a colour outside the hypotheses of the surgery
    /// formula (a colour divisible by, or sharing a factor with, the order).
    #[error("unsupported character: {0}")]
    Unsupported(String),

    /// The meridian assignment does not satisfy the surgery relations.
    #[error("invalid character: {0}")]
    InvalidCharacter(String),

    #[error("order {0} is not a perfect square (the order of H_1 of a rational homology sphere bounding a rational homology ball is a square)")]
    NonSquareOrder(String),

    #[error("size cap exceeded: {0}")]
    CapExceeded(String),

    #[error("could not certify the signature: {0}")]
    Uncertified(String),

    /// An internal consistency check failed. This indicates a bug, not bad input.
    #[error("internal assertion failed: {0}")]
    Internal(String),
}

impl Error {
    /// Whether the error is an internal consistency failure rather than a
    /// rejection of the caller's input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_) | Error::Uncertified(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
