//! Error types shared across the crate.
//!
//! Errors are split into categories that the CLI maps onto distinct exit
//! codes: I/O and parse problems, validation/precondition failures, and
//! mathematical inconsistencies (a violated identity that should hold for
//! every valid input, i.e. a bug or a corrupted instance).

use thiserror::Error;

use crate::field::CoarseUnit;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at {path}: {message}")]
    Parse { path: String, message: String },

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("validation failed at {path}: {message}")]
    Validation { path: String, message: String },

    #[error("model mismatch: operands belong to different local field models")]
    ModelMismatch,

    #[error("rank deficiency: columns are linearly dependent")]
    RankDeficiency,

    #[error("infinite index: {0}")]
    InfiniteIndex(String),

    #[error("valuation of zero is undefined")]
    ValuationOfZero,

    #[error("integer overflow in valuation arithmetic")]
    Overflow,

    #[error("adjoint is not integral: T-dagger is not an endomorphism of the lattice")]
    NonIntegralAdjoint,

    #[error(
        "Riemann form condition violated ({clause}) at generator pair ({i}, {j}): \
         values {left} and {right}"
    )]
    RiemannForm {
        clause: &'static str,
        i: usize,
        j: usize,
        left: CoarseUnit,
        right: CoarseUnit,
    },

    #[error("Riemann form condition violated ({clause}): leading principal minor {k} is {value}")]
    NotPositiveDefinite {
        clause: &'static str,
        k: usize,
        value: String,
    },

    #[error(
        "homomorphism compatibility failed at {count} generator pair(s); first at ({i}, {j}): \
         [phi(l{i}), m{j}] = {left} but [l{i}, phi-dual(m{j})] = {right}"
    )]
    HomCompatibility {
        i: usize,
        j: usize,
        left: CoarseUnit,
        right: CoarseUnit,
        count: usize,
    },

    #[error("internal consistency violation: {0}")]
    Inconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn validation(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Validation {
            path: path.into(),
            message: message.into(),
        }
    }

    pub fn parse(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            message: message.into(),
        }
    }

    /// Exit code the CLI uses for this error: 1 for I/O and parse errors,
    /// 2 for validation and precondition failures, 3 for violated
    /// mathematical properties.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::Io(_) => 1,
            Error::Inconsistency(_) => 3,
            _ => 2,
        }
    }
}
