//! Exact computer algebra for multiparameter quantum deformations of skew
//! Schur modules, with Littlewood-Richardson filtrations verified at generic
//! q and at roots of unity.
//!
//! All coefficients live in Z[Q,Q^-1] (or one of its specializations); there
//! is no floating point anywhere in this crate.

pub mod arith;
pub mod shapes;
pub mod braiding;
pub mod algebras;
pub mod schur;
pub mod classical;
pub mod filtration;
pub mod report;

/// Hard failure modes. The `*Failed` variants signal that a verified theorem
/// identity did not hold on concrete data; they are never silently corrected.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("VERIFICATION_FAILED: {0}")]
    VerificationFailed(String),
    #[error("INTEGRALITY_FAILED: {0}")]
    IntegralityFailed(String),
    #[error("BASIS_FAILED: {0}")]
    BasisFailed(String),
    #[error("FILTRATION_FAILED: {0}")]
    FiltrationFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code the CLI maps this error to.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidInput(_) => 2,
            _ => 1,
        }
    }
}
