use thiserror::Error;

use crate::cohomology::{Operation, ValidationReport};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    Dimension {
        context: String,
        expected: usize,
        found: usize,
    },

    #[error(
        "dimension mismatch in ({op}, {degree}) matrix: expected {}x{}, found {}x{}",
        expected.0, expected.1, found.0, found.1
    )]
    MatrixShape {
        op: Operation,
        degree: usize,
        expected: (usize, usize),
        found: (usize, usize),
    },

    #[error("non-canonical group presentation: {0}")]
    NonCanonicalGroup(String),

    #[error("denominator not contained in numerator (denominator generator {index})")]
    NotContained { index: usize },

    #[error("missing product table for degrees ({0}, {1})")]
    MissingCupTable(usize, usize),

    #[error("missing {op} matrix in degree {degree}")]
    MissingMatrix { op: Operation, degree: usize },

    #[error("coefficient ring mismatch: {0}")]
    RingMismatch(String),

    #[error("degree mismatch: expected degree {expected}, found degree {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("degree {0} is outside the range 0..=8")]
    DegreeOutOfRange(usize),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("T unavailable: supply odd unitary generators")]
    OddGeneratorsUnavailable,

    #[error("unknown builtin manifold `{0}` (expected one of {1})")]
    UnknownBuiltin(String, String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("missing section: {0}")]
    MissingSection(&'static str),

    #[error("manifold data failed validation:\n{0}")]
    Validation(Box<ValidationReport>),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
