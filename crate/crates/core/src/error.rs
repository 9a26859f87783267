use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },
    #[error("{0} does not lie in Z_2")]
    NotInZ2(String),
    #[error("binomial coefficient with negative upper index {0}")]
    NegativeBinomial(i64),
    #[error("undefined: {0}")]
    Undefined(String),
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("Jq^{0} is indecomposable over Z_2")]
    Indecomposable(u32),
    #[error("resolution failed: {0}")]
    ResolutionFailed(String),
    #[error("not found: {0}")]
    NotFound(String),
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("unsupported coefficients: {0}")]
    UnsupportedCoefficients(String),
    #[error("degree {degree} exceeds the configured bound {bound}")]
    DegreeBound { degree: u32, bound: u32 },
}

impl Error {
    /// True for the "searched and found nothing" family, as opposed to bad input.
    pub fn is_not_found(&self) -> bool {
        matches!(
            self,
            Error::NotFound(_) | Error::NoSolution(_) | Error::ResolutionFailed(_)
        )
    }
}
