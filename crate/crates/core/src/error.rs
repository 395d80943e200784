use thiserror::Error;

/// Errors raised by the toolkit.
///
/// Shape and precondition failures are usage errors; the hypothesis
/// variants mean an input was well formed but violates a condition the
/// requested computation depends on.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not invertible over the integers (det = {det})")]
    NotUnimodular { det: String },
    #[error("matrix is not skew-symmetric")]
    NotSkew,
    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),
    #[error("matrix does not have order dividing {order}")]
    OrderMismatch { order: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("action is not free outside the origin: {0}")]
    NotFreeOutsideOrigin(String),
    #[error("form is degenerate (witness {0})")]
    Degenerate(String),
    #[error("form is not invariant under the generator")]
    NotInvariant,
    #[error("matrix is not in the isotropy group of the form")]
    NotInIsotropy,
    #[error("search bound exceeded: {0}")]
    SearchBoundExceeded(String),
    #[error("invalid partition certificate: {0}")]
    InvalidCertificate(String),
    #[error("internal cross-check failed: {0}")]
    CrossCheck(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("fixture error: {0}")]
    Fixture(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
