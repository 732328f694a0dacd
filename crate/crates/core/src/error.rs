use thiserror::Error;

use crate::parser::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("index {index} out of range for {len} variables")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("empty input: {0}")]
    EmptyInput(&'static str),
    #[error("minor size {k} out of range for a {rows}x{cols} matrix")]
    MinorSize { k: usize, rows: usize, cols: usize },
    #[error("{0} requires a nonzero polynomial")]
    ZeroPolynomial(&'static str),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{op} of the unit ideal is undefined")]
    UnitIdeal { op: &'static str },
    #[error("infinite vector-space dimension: {0}")]
    InfiniteDimension(String),
    #[error("polar locus has dimension {dim} > 1: {context}")]
    PolarDimensionTooHigh { dim: i64, context: String },
    #[error("variety has dimension {found}, expected {expected}")]
    DimensionMismatch { expected: i64, found: i64 },
    #[error("codimension mismatch: {0}")]
    CodimMismatch(String),
    #[error("formulas disagree: {0}")]
    ConsistencyViolation(String),
    #[error("no generic choice found after {} attempts: {}", .attempts.len(), .attempts.join("; "))]
    RetriesExhausted { attempts: Vec<String> },
    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Stable machine-readable name of the error class.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::RingMismatch => "ring_mismatch",
            Error::IndexOutOfRange { .. } => "index_out_of_range",
            Error::EmptyInput(_) => "empty_input",
            Error::MinorSize { .. } => "minor_size",
            Error::ZeroPolynomial(_) => "zero_polynomial",
            Error::InvalidRing(_) => "invalid_ring",
            Error::InvalidMatrix(_) => "invalid_matrix",
            Error::Parse(e) => e.kind(),
            Error::UnitIdeal { .. } => "unit_ideal",
            Error::InfiniteDimension(_) => "infinite_dimension",
            Error::PolarDimensionTooHigh { .. } => "polar_dimension_too_high",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::CodimMismatch(_) => "codim_mismatch",
            Error::ConsistencyViolation(_) => "consistency_violation",
            Error::RetriesExhausted { .. } => "retries_exhausted",
            Error::Hypothesis(_) => "hypothesis",
            Error::Internal(_) => "internal",
        }
    }

    /// Errors that a fresh generic choice (new linear form) may cure.
    pub fn is_genericity_failure(&self) -> bool {
        matches!(
            self,
            Error::InfiniteDimension(_)
                | Error::PolarDimensionTooHigh { .. }
                | Error::DimensionMismatch { .. }
                | Error::ConsistencyViolation(_)
        )
    }
}
