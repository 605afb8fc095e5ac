//! Declarative descriptions of the built-in instances.

use serde::{Deserialize, Serialize};

use crate::cat::{validate_monoid, CommMonoidPresentation, FiniteCategory};
use crate::doublecat::FiniteDoubleCategory;
use crate::error::{CoreError, Result};
use crate::framed::{restrict_hat, restrict_star, restrict_tilde};
use crate::instances::commuting::build_commuting_squares;
use crate::instances::embedding::build_length_two_example;
use crate::instances::frame::{build_group_double_groupoid, build_monoid_bundle, build_witness_instance};
use crate::instances::rel::{FrameClass, RelDoubleCategory};
use crate::instances::span::build_span;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case", deny_unknown_fields)]
pub enum NamedCategory {
    Discrete { objects: usize },
    /// `0 < 1 < … < length`
    Chain { length: usize },
    /// Z/order as a one-object category.
    Cyclic { order: usize },
}

impl NamedCategory {
    pub fn build(&self) -> FiniteCategory {
        match *self {
            NamedCategory::Discrete { objects } => FiniteCategory::discrete(objects),
            NamedCategory::Chain { length } => FiniteCategory::chain(length),
            NamedCategory::Cyclic { order } => FiniteCategory::cyclic_group(order),
        }
    }
}

fn all_frames() -> FrameClass {
    FrameClass::All
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum InstanceKind {
    /// Relations between the sets of sizes `1..=n`.
    Rel { n: usize },
    /// Spans between sets of the given sizes, generated by spans with at most `apex` points.
    Span {
        sizes: Vec<usize>,
        apex: u32,
        #[serde(default = "all_frames")]
        frames: FrameClass,
    },
    CommutingSquares { category: NamedCategory },
    MonoidBundle { monoid: CommMonoidPresentation },
    GroupDoubleGroupoid { order: usize },
    /// The frame product of Z/2 with endofunctors of a three-object category.
    FrameWitness,
    /// The vertical embedding of the chain 2-category with Z/2 cells.
    LengthTwo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RestrictionKind {
    Star,
    Tilde,
    Hat,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceSpec {
    pub builder: InstanceKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub restriction: Option<RestrictionKind>,
}

impl InstanceSpec {
    pub fn new(builder: InstanceKind) -> Self {
        Self { builder, restriction: None }
    }

    pub fn restricted(builder: InstanceKind, restriction: RestrictionKind) -> Self {
        Self {
            builder,
            restriction: Some(restriction),
        }
    }
}

/// Builds and tabulates the described instance. Relation and span instances restricted to
/// invertible frames are enumerated with bijective frames directly.
pub fn build_instance(spec: &InstanceSpec, budget: u128) -> Result<FiniteDoubleCategory> {
    let star = spec.restriction == Some(RestrictionKind::Star);
    let base = match &spec.builder {
        InstanceKind::Rel { n } => {
            if !(1..=3).contains(n) {
                return Err(CoreError::Range(format!("rel size {n} outside 1..=3")));
            }
            let class = if star { FrameClass::Bijective } else { FrameClass::All };
            let c = RelDoubleCategory::new(&(1..=*n).collect::<Vec<_>>(), class)?.materialize(budget)?;
            if star {
                return Ok(c);
            }
            c
        }
        InstanceKind::Span { sizes, apex, frames } => {
            if sizes.iter().any(|&s| s == 0 || s > 3) || *apex > 3 {
                return Err(CoreError::Range("span sizes and apex must lie in 1..=3".into()));
            }
            let class = if star { FrameClass::Bijective } else { *frames };
            let c = build_span(sizes, *apex, class, budget)?.double;
            if star {
                return Ok(c);
            }
            c
        }
        InstanceKind::CommutingSquares { category } => build_commuting_squares(&category.build())?,
        InstanceKind::MonoidBundle { monoid } => {
            let report = validate_monoid(monoid);
            if !report.is_empty() {
                return Err(CoreError::Invalid { context: "monoid", report });
            }
            build_monoid_bundle(monoid)?
        }
        InstanceKind::GroupDoubleGroupoid { order } => build_group_double_groupoid(*order)?,
        InstanceKind::FrameWitness => build_witness_instance()?,
        InstanceKind::LengthTwo => build_length_two_example()?,
    };
    Ok(match spec.restriction {
        None => base,
        Some(RestrictionKind::Star) => restrict_star(&base)?.double,
        Some(RestrictionKind::Tilde) => restrict_tilde(&base)?.double,
        Some(RestrictionKind::Hat) => restrict_hat(&base)?.double,
    })
}
