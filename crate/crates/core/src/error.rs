use thiserror::Error;

use crate::report::LawReport;

/// Errors raised by constructors and engines in this crate.
///
/// Law violations of otherwise well-shaped data are *not* errors; they are
/// returned as [`LawReport`] entries by the various `check_*` functions.
#[derive(Debug, Error)]
pub enum CoreError {
    /// Table lengths or indices do not fit the declared carriers.
    #[error("malformed data: {0}")]
    Shape(String),

    #[error("duplicate element {0} in finite set")]
    DuplicateElement(String),

    #[error("element {0} does not belong to the carrier")]
    ForeignElement(String),

    #[error("codomain mismatch: {0}")]
    CodomainMismatch(String),

    /// Two structures that must share a leg (category, foot, fibre) do not.
    #[error("leg mismatch: {0}")]
    LegMismatch(String),

    /// Input rejected because its own checker reports violations.
    #[error("{what} failed its law check ({} violation(s)); first: {}", .report.total, .report.first_line())]
    Invalid { what: String, report: LawReport },

    #[error("{what} has {size} morphisms, above the configured limit of {limit}")]
    TooLarge { what: String, size: usize, limit: usize },

    /// Combinatorial search aborted; the result would have been truncated.
    #[error("enumeration budget of {budget} exceeded while {what}")]
    Budget { what: String, budget: u64 },

    #[error("structure is not strict: {0}")]
    NotStrict(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;
