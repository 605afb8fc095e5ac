//! Validation reports: every violated law with the ids that witness it.

use serde::Serialize;
use std::fmt;

/// One violated law. `law` is a stable identifier, `witness` the offending ids in the order the
/// law names them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub law: String,
    pub witness: Vec<u32>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    /// Informational findings that are not violations.
    pub notes: Vec<String>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, law: impl Into<String>, witness: impl IntoIterator<Item = u32>) {
        self.violations.push(Violation {
            law: law.into(),
            witness: witness.into_iter().collect(),
        });
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Appends `other`, prefixing its law ids with `scope.`.
    pub fn absorb(&mut self, scope: &str, other: ValidationReport) {
        for v in other.violations {
            self.violations.push(Violation {
                law: format!("{scope}.{}", v.law),
                witness: v.witness,
            });
        }
        self.notes.extend(other.notes);
    }

    pub fn has_law(&self, law: &str) -> bool {
        self.violations.iter().any(|v| v.law == law)
    }

    pub fn first(&self, law: &str) -> Option<&Violation> {
        self.violations.iter().find(|v| v.law == law)
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [", self.law)?;
        for (i, w) in self.witness.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, "]")
    }
}
