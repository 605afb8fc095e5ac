//! Finite strict double categories as explicit tables, with exhaustive checkers for their laws,
//! π₂-indexings, crossed products, framedness and length.
//!
//! Everything is finite and decided by enumeration. Builders and searches that could blow up take
//! a `budget` and fail with [`error::CoreError::BudgetExceeded`] instead.

pub mod cat;
pub mod cli;
pub mod crossprod;
pub mod doublecat;
pub mod error;
pub mod framed;
pub mod implicit;
pub mod ids;
pub mod indexing;
pub mod instances;
pub mod io;
pub mod length;
pub mod pi2;
pub mod report;
pub mod twocat;

/// Default cap on enumerated table entries.
pub const DEFAULT_BUDGET: u128 = 50_000_000;
