use alloc::string::String;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("grid dimensions must be positive, got {rows}x{cols}")]
    InvalidDims { rows: usize, cols: usize },
    #[error("site ({row}, {col}) is outside the {rows}x{cols} grid")]
    SiteOutOfBounds { row: usize, col: usize, rows: usize, cols: usize },
    #[error("label {label} at position {index} is not in [0, {num_classes})")]
    LabelOutOfRange { index: usize, label: usize, num_classes: usize },
    #[error("expected {expected} values, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("class index {class} is not in [0, {num_classes})")]
    ClassOutOfRange { class: usize, num_classes: usize },
    #[error("field has {field} classes but the emission model has {model}")]
    ClassMismatch { field: usize, model: usize },
    #[error("grid mismatch: {expected_rows}x{expected_cols} vs {rows}x{cols}")]
    DimsMismatch { expected_rows: usize, expected_cols: usize, rows: usize, cols: usize },
    #[error("grid {rows}x{cols} has no interior sites")]
    NoInterior { rows: usize, cols: usize },
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("no convergence after {iterations} iterations, best bracket [{lo}, {hi}]")]
    NonConvergence { iterations: usize, lo: f64, hi: f64 },
}
