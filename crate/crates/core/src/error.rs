use thiserror::Error;

use crate::report::AxiomReport;

/// Errors raised by constructions, verification and the document format.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An argument exceeds the desk-scale bounds of this library.
    #[error("capacity error: {0}")]
    Capacity(String),

    /// Tables with the wrong shape or out-of-range entries.
    #[error("structural error: {0}")]
    Structural(String),

    /// An operation needed a verified hyperfield and got something else.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// The unique-opposite axiom does not hold for `element`.
    #[error("element {element} has {} opposites {candidates:?}, expected exactly one", candidates.len())]
    NoUniqueOpposite {
        element: usize,
        candidates: Vec<usize>,
    },

    /// A construction produced a table that failed verification.
    #[error("{construction} failed verification: {}", report.first_failure().map(|o| o.to_string()).unwrap_or_default())]
    Construction {
        construction: String,
        report: Box<AxiomReport>,
    },

    /// Malformed document text.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// A well-formed document that violates a structural rule.
    #[error("validation error [{code}]: {message}")]
    Validation {
        code: ValidationCode,
        message: String,
    },

    /// The enumeration ran out of its wall-clock budget.
    #[error("budget exceeded after scanning {scanned} candidates ({survivors} survivors)")]
    Budget { scanned: u64, survivors: u64 },
}

/// Rejection classes of the document validator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ValidationCode {
    Version,
    Dimension,
    Range,
    EmptyCell,
    UnsortedCell,
    Identity,
    Capacity,
}

impl ValidationCode {
    pub fn as_str(self) -> &'static str {
        match self {
            ValidationCode::Version => "E_VERSION",
            ValidationCode::Dimension => "E_DIMENSION",
            ValidationCode::Range => "E_RANGE",
            ValidationCode::EmptyCell => "E_EMPTY_CELL",
            ValidationCode::UnsortedCell => "E_UNSORTED_CELL",
            ValidationCode::Identity => "E_IDENTITY",
            ValidationCode::Capacity => "E_CAPACITY",
        }
    }
}

impl std::fmt::Display for ValidationCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
