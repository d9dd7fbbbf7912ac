use thiserror::Error;

/// Every failure the library reports.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum RdiError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("index {index} outside 1..=16")]
    IndexOutOfRange { index: usize },
    #[error("matrix is singular (smallest singular value {0:e})")]
    SingularInput(f64),
    #[error("sandwich left a non-vector remainder of size {0:e}")]
    NonVectorResult(f64),
    #[error("spinor density vanishes")]
    NullDensity,
    #[error("matrix spinor is singular (|det| = {0:e})")]
    SingularSpinor(f64),
    #[error("finite-difference error estimate {estimate:e} exceeds tolerance {tolerance:e}")]
    StepTooLarge { estimate: f64, tolerance: f64 },
    #[error("point lies on the symmetry axis where the field is singular")]
    OnAxis,
    #[error("state is not square integrable over the transverse plane")]
    NotNormalizable,
    #[error("streamline integration became unstable: {0}")]
    StepUnstable(String),
}

pub type Result<T> = std::result::Result<T, RdiError>;
