use thiserror::Error;

use crate::ids::{ElemId, MorId, ObjId, SqId};
use crate::report::ValidationReport;

/// Errors raised by table lookups, builders and searches.
///
/// Law violations are never errors: validators return them as [`ValidationReport`] data.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    #[error("boundary mismatch: {0}")]
    BoundaryMismatch(String),

    #[error("composition table has no entry for the legal pair {0}")]
    MissingEntry(String),

    #[error("id out of range: {0}")]
    Range(String),

    #[error("malformed table: {0}")]
    Malformed(String),

    #[error("Eckmann-Hilton violation at object {object}: {detail}")]
    EckmannHilton { object: ObjId, detail: String },

    #[error("element {elem} does not live at object {object} for this direction")]
    DirectionMismatch { object: ObjId, elem: ElemId },

    #[error("decorated horizontalization does not match the indexing base")]
    BaseMismatch,

    #[error("the double category does not induce the indexing ({} violations)", .0.violations.len())]
    NotInducing(ValidationReport),

    #[error("no factorization for vertical morphism {morphism} and pi2 element {element}")]
    NoFactorization { morphism: MorId, element: ElemId },

    #[error("factorization for vertical morphism {morphism} and pi2 element {element} is not unique ({count} candidates)")]
    NonUniqueFactorization {
        morphism: MorId,
        element: ElemId,
        count: usize,
    },

    #[error("not a framed bicategory ({} unfillable niches)", .0.violations.len())]
    NotFramed(ValidationReport),

    #[error("invalid input ({context}): {} violations", .report.violations.len())]
    Invalid {
        context: &'static str,
        report: ValidationReport,
    },

    #[error("required composite is missing from the target: {0}")]
    IllFormedComposite(String),

    #[error("enumeration budget exceeded: {what} needs {needed}, budget is {budget}")]
    BudgetExceeded {
        what: String,
        needed: u128,
        budget: u128,
    },

    #[error("square {0} is not in the crossed product")]
    UnknownSquare(SqId),
}

pub type Result<T, E = CoreError> = std::result::Result<T, E>;
