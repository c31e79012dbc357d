use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unsupported Clifford dimension {0} (supported: 2..=8)")]
    UnsupportedDimension(usize),

    #[error("invalid request: {0}")]
    InvalidRequest(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("spin structure {delta} is not admissible for r = {r}: delta3 = -1 requires even r")]
    Admissibility { r: u32, delta: String },

    #[error("CP^{0} is not spin (CP^m is spin if and only if m is odd)")]
    NonSpin(u32),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("out of scope: {0}")]
    OutOfScope(String),

    #[error("multiplicity is not a positive integer: {0}")]
    Multiplicity(String),

    #[error("no convergence: {0}")]
    Convergence(String),
}

impl Error {
    /// True for errors caused by caller-supplied arguments rather than internal failures.
    pub fn is_argument_error(&self) -> bool {
        !matches!(self, Error::Multiplicity(_) | Error::Convergence(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
