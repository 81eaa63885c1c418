//! Error type shared across the crate.

use alloc::string::String;
use core::fmt;

/// Errors reported by the exact-calculus and analysis operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Two operands live in ambient spaces of different dimension.
    DimensionMismatch { left: usize, right: usize },
    /// A matrix is not square, or its shape disagrees with the declared size.
    BadShape(String),
    /// A matrix dimension must be even (Pfaffians only exist there).
    OddDimension(usize),
    /// A full input matrix fails the skew-symmetry test.
    NotSkew { row: usize, col: usize },
    /// The structure matrix is degenerate (zero Pfaffian).
    DegenerateStructure,
    /// A coordinate or branch index is out of range.
    IndexOutOfRange { index: usize, bound: usize },
    /// Two indices that must differ coincide.
    EqualIndices(usize),
    /// A branch count exceeds the ambient dimension.
    BranchCountTooLarge { branches: usize, dim: usize },
    /// A residue was requested along a coordinate the form is not log along.
    NotLogAlong(usize),
    /// An index list meant to be strictly increasing is not.
    UnsortedIndexSet,
    /// A pair must be residual (nonzero biresidue) for the operation.
    NonResidualPair { i: usize, j: usize },
    /// A closedness certificate is required but absent.
    MissingCertificate,
    /// A numeric argument lies outside the operation's domain.
    DomainError(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { left, right } => {
                write!(f, "dimension mismatch: {left} vs {right}")
            }
            Error::BadShape(msg) => write!(f, "bad matrix shape: {msg}"),
            Error::OddDimension(n) => write!(f, "dimension {n} is odd; an even dimension is required"),
            Error::NotSkew { row, col } => {
                write!(f, "matrix is not skew-symmetric at entry ({row}, {col})")
            }
            Error::DegenerateStructure => write!(f, "degenerate structure: the Pfaffian vanishes"),
            Error::IndexOutOfRange { index, bound } => {
                write!(f, "index {index} out of range (bound {bound})")
            }
            Error::EqualIndices(i) => write!(f, "indices must differ, both equal {i}"),
            Error::BranchCountTooLarge { branches, dim } => {
                write!(f, "branch count {branches} exceeds ambient dimension {dim}")
            }
            Error::NotLogAlong(k) => {
                write!(f, "form is not logarithmic along coordinate {k}")
            }
            Error::UnsortedIndexSet => write!(f, "index set is not strictly increasing"),
            Error::NonResidualPair { i, j } => {
                write!(f, "pair ({i}, {j}) is non-residual (zero biresidue)")
            }
            Error::MissingCertificate => write!(f, "closedness certificate required but absent"),
            Error::DomainError(msg) => write!(f, "domain error: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;
