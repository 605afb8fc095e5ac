//! The commutative monoid of natural endomorphisms of an identity functor.

use crate::cat::{validate_monoid, CommMonoidPresentation, FiniteCategory, FunctorTable};
use crate::error::{CoreError, Result};
use crate::ids::MorId;
use crate::instances::frame::natural_transformations;

/// Families `(ν_x: x → x)` with `ν_y ∘ f = f ∘ ν_x` for every `f: x → y`, in lexicographic order
/// of their components.
pub fn nat_endomorphisms(cat: &FiniteCategory) -> Vec<Vec<MorId>> {
    let id = FunctorTable::identity(cat);
    let mut out = natural_transformations(cat, &id, &id);
    out.sort();
    out
}

/// Nat(id_C) under componentwise composition. Element `i` is the `i`-th family of
/// [`nat_endomorphisms`].
pub fn nat_endomorphisms_monoid(cat: &FiniteCategory) -> Result<CommMonoidPresentation> {
    let families = nat_endomorphisms(cat);
    let position = |f: &[MorId]| families.iter().position(|g| g.as_slice() == f);
    let unit_family: Vec<MorId> = cat.identities().to_vec();
    let unit = position(&unit_family).ok_or_else(|| CoreError::Malformed("identity family is missing".into()))?;
    let n = families.len();
    let mut table = Vec::with_capacity(n * n);
    for a in &families {
        for b in &families {
            let c: Vec<MorId> = a.iter().zip(b).map(|(&x, &y)| cat.compose(x, y)).collect::<Result<_>>()?;
            table.push(position(&c).ok_or_else(|| CoreError::IllFormedComposite("natural family".into()))?);
        }
    }
    let m = CommMonoidPresentation::from_fn(n, unit, |a, b| table[a * n + b])?;
    let report = validate_monoid(&m);
    if !report.is_empty() {
        return Err(CoreError::Invalid { context: "natural endomorphisms", report });
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert_eq!(nat_endomorphisms_monoid(&FiniteCategory::cyclic_group(2)).unwrap().size(), 2);
        assert_eq!(nat_endomorphisms_monoid(&FiniteCategory::chain(2)).unwrap().size(), 1);
        assert_eq!(nat_endomorphisms_monoid(&FiniteCategory::discrete(2)).unwrap().size(), 1);
    }
}
