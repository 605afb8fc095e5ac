//! Concrete double categories.

pub mod commuting;
pub mod embedding;
pub mod frame;
pub mod nat;
pub mod rel;
pub mod span;
pub mod spec;
pub mod witness;
