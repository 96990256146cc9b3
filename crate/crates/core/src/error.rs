//! Error type shared by every module.

use thiserror::Error;

/// Errors raised by constructors and operations whose preconditions fail.
///
/// Verification failures are *not* errors: verifiers return a
/// [`crate::report::Report`] whose entries carry pass/fail and witnesses.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two sequences that must have equal length do not.
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    /// A permutation is not a bijection of `0..n`.
    #[error("not a permutation: {0:?}")]
    NotAPermutation(Vec<usize>),

    /// A chain complex whose differential does not square to zero.
    #[error("differential does not square to zero (first nonzero entry at generator {generator})")]
    NotAComplex { generator: usize },

    /// Malformed simplicial data.
    #[error("invalid simplicial complex: {0}")]
    InvalidComplex(String),

    /// Cochains living on different complexes were combined.
    #[error("cochains live on different complexes")]
    ComplexMismatch,

    /// A simplicial map that is not order preserving or not simplicial.
    #[error("invalid inclusion: {0}")]
    InvalidInclusion(String),

    /// A cochain of the wrong degree was supplied.
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: i64, found: i64 },

    /// A relative cochain that does not vanish on the subcomplex.
    #[error("relative cochain does not vanish on the subcomplex")]
    NotRelative,

    /// Dimension data of a plumbing specification is inconsistent.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// Components of a clean plumbing overlap.
    #[error("overlapping components: {0}")]
    OverlappingComponents(String),

    /// A component identification that is not a cellular order-preserving bijection.
    #[error("non-cellular identification: {0}")]
    NonCellular(String),

    /// Entries of formal count data or of a table that violate the degree rule.
    #[error("degree violations: {}", .0.join("; "))]
    DegreeViolation(Vec<String>),

    /// Unknown generator, object or symbol identifier.
    #[error("unknown identifier: {0}")]
    UnknownId(String),

    /// Inputs that are not composable.
    #[error("not composable: {0}")]
    NotComposable(String),

    /// Torsion prevents an integral splitting of a hom complex.
    #[error("torsion obstruction in hom({from}, {to}) degree {degree}: invariant factors {factors:?}; rerun over a prime field")]
    TorsionObstruction {
        from: String,
        to: String,
        degree: i64,
        factors: Vec<String>,
    },

    /// A homotopy-transfer step produced a non-cycle (internal consistency failure).
    #[error("homotopy transfer failed: {0}")]
    TransferFailure(String),

    /// Input outside the domain of an operation (index out of range, d too small, …).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Labels that do not agree when grafting labelled trees.
    #[error("label mismatch: {0}")]
    LabelMismatch(String),

    /// Parse errors of the textual/JSON formats.
    #[error("parse error: {0}")]
    Parse(String),
}

/// Convenience alias.
pub type Result<T> = std::result::Result<T, Error>;
