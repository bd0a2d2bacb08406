use thiserror::Error;

use crate::ratpoly::Rational;
use crate::subset::Subset;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },

    #[error("degenerate interpolation input: duplicate abscissa {0}")]
    DegenerateInterpolation(i64),

    #[error("invalid value set: {0}")]
    InvalidValueSet(String),

    #[error("invalid slice domain: {0}")]
    InvalidDomain(String),

    #[error("domain has {points} points, more than the limit of {limit}")]
    DomainTooLarge { points: u128, limit: u128 },

    #[error("dimension mismatch: expected n = {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("point {0} does not belong to the domain")]
    PointOutsideDomain(Subset),

    #[error("slice too small to homogenize: k = {k} < d = {d}")]
    SliceTooSmall { k: usize, d: usize },

    #[error("degree exceeds target: polynomial has degree {degree} > {target}")]
    DegreeExceedsTarget { degree: usize, target: usize },

    #[error("extraction requires n >= k + d (n = {n}, k = {k}, d = {d})")]
    ExtractionDomain { n: usize, k: usize, d: usize },

    #[error("input exceeds stated degree {0}")]
    ExceedsStatedDegree(usize),

    #[error("sets I and J are not disjoint")]
    OverlappingSets,

    #[error("degenerate construction: {0}")]
    DegenerateConstruction(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("function is not A-valued: value {value} at point {point}")]
    NotAValued { point: Subset, value: Rational },

    #[error("no counterexample exists at this k (k = {k} >= k(A,d) = {threshold})")]
    NoCounterexample { k: usize, threshold: usize },

    #[error("internal inconsistency: kappa = {kappa} but k = {k} for A = {set}, d = {d}")]
    ThresholdMismatch {
        set: String,
        d: usize,
        k: usize,
        kappa: usize,
    },
}
