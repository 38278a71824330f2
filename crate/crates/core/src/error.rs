use thiserror::Error;

use crate::graph::Family;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{family} requires n >= {min}, got n = {n}")]
    SizeTooSmall { family: Family, n: usize, min: usize },

    #[error("operation expects a {expected} instance, got {actual}")]
    FamilyMismatch { expected: Family, actual: Family },

    #[error("matrix is not symmetric: |a[{row}][{col}] - a[{col}][{row}]| = {deviation:e}")]
    NotSymmetric { row: usize, col: usize, deviation: f64 },

    #[error("matrix must be square and non-empty (got {rows}x{cols})")]
    BadShape { rows: usize, cols: usize },

    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal residual {residual:e})")]
    NoConvergence { sweeps: usize, residual: f64 },

    #[error("vector is not normalized: |v|^2 = {norm_sq}")]
    NotNormalized { norm_sq: f64 },

    #[error("vector has length {actual}, expected {expected}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("eigensystem is incomplete: projectors deviate from identity by {deviation:e} (Frobenius)")]
    IncompleteEigensystem { deviation: f64 },

    #[error("invalid averaging window: T = {t_max}, dt = {dt} (need T > 0 and 0 < dt <= T/10)")]
    InvalidWindow { t_max: f64, dt: f64 },

    #[error("unknown model id `{0}`")]
    UnknownModel(String),

    #[error("unknown label `{0}`")]
    UnknownLabel(String),

    #[error("unknown vertex class `{0}`")]
    UnknownClass(String),

    #[error("vertex index {index} out of range for {len} vertices")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("scaling fit needs at least 3 points, got {0}")]
    TooFewPoints(usize),

    #[error("scaling fit needs positive values (n = {n}, value = {value})")]
    NonPositiveValue { n: f64, value: f64 },

    #[error("operation requires an analytic eigensystem with labelled modes")]
    NeedsAnalyticBasis,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
