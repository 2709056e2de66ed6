use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("matrix is not positive definite (pivot {index} = {pivot:e}); use a regularization alpha > 0 or fewer modes")]
    NotPositiveDefinite { index: usize, pivot: f64 },

    #[error("matrix is singular: lambda_min + alpha = {0:e}")]
    Singular(f64),

    #[error("Volterra kernel is singular: H(0) = 0")]
    SingularKernel,

    #[error("Volterra marching breaks down: diagonal factor {0:e} is too close to zero")]
    MarchingBreakdown(f64),

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("config error in field `{field}`: {message}")]
    Config { field: String, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    /// True for failures of the numerical pipeline (as opposed to bad input).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NotPositiveDefinite { .. }
                | Error::Singular(_)
                | Error::SingularKernel
                | Error::MarchingBreakdown(_)
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
