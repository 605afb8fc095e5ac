//! Finite categories, finite commutative monoids and functors, all as explicit tables.
//!
//! Composition is written `compose(second, first)`: the morphism obtained by doing `first` and then
//! `second`.

use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};
use crate::ids::{ids, ElemId, MorId, ObjId};
use crate::report::ValidationReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Morphism {
    pub source: ObjId,
    pub target: ObjId,
}

/// A finite category stored as tables. The composition table is dense over all pairs and an entry
/// is expected exactly at the pairs whose endpoints match.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteCategory {
    object_count: usize,
    morphisms: Vec<Morphism>,
    identities: Vec<MorId>,
    composition: Vec<Option<MorId>>,
    hom: Vec<Vec<MorId>>,
}

impl FiniteCategory {
    /// Assembles a category from raw tables. Only ranges are checked here; laws are checked by
    /// [`validate_category`].
    pub fn new(
        object_count: usize,
        morphisms: Vec<Morphism>,
        identities: Vec<MorId>,
        composition: impl IntoIterator<Item = (MorId, MorId, MorId)>,
    ) -> Result<Self> {
        let m = morphisms.len();
        for (i, mor) in morphisms.iter().enumerate() {
            if mor.source.index() >= object_count || mor.target.index() >= object_count {
                return Err(CoreError::Range(format!("morphism m{i} has an endpoint outside {object_count} objects")));
            }
        }
        if identities.len() != object_count {
            return Err(CoreError::Malformed(format!(
                "{} identities for {object_count} objects",
                identities.len()
            )));
        }
        if let Some(id) = identities.iter().find(|id| id.index() >= m) {
            return Err(CoreError::Range(format!("identity {id} outside {m} morphisms")));
        }
        let mut table = vec![None; m * m];
        for (second, first, result) in composition {
            for x in [second, first, result] {
                if x.index() >= m {
                    return Err(CoreError::Range(format!("composition entry mentions {x} outside {m} morphisms")));
                }
            }
            let slot = &mut table[second.index() * m + first.index()];
            if slot.is_some() {
                return Err(CoreError::Malformed(format!("duplicate composition entry ({second}, {first})")));
            }
            *slot = Some(result);
        }
        let mut hom = vec![Vec::new(); object_count * object_count];
        for (i, mor) in morphisms.iter().enumerate() {
            hom[mor.source.index() * object_count + mor.target.index()].push(MorId::from(i));
        }
        Ok(Self {
            object_count,
            morphisms,
            identities,
            composition: table,
            hom,
        })
    }

    /// Fills the composition table from `rule` at every pair whose endpoints match.
    pub fn from_rule(
        object_count: usize,
        morphisms: Vec<Morphism>,
        identities: Vec<MorId>,
        rule: impl Fn(MorId, MorId) -> Option<MorId>,
    ) -> Result<Self> {
        let mut entries = Vec::new();
        for (i, first) in morphisms.iter().enumerate() {
            for (j, second) in morphisms.iter().enumerate() {
                if first.target == second.source {
                    if let Some(r) = rule(MorId::from(j), MorId::from(i)) {
                        entries.push((MorId::from(j), MorId::from(i), r));
                    }
                }
            }
        }
        Self::new(object_count, morphisms, identities, entries)
    }

    /// The discrete category on `n` objects.
    pub fn discrete(n: usize) -> Self {
        let morphisms = (0..n)
            .map(|i| Morphism {
                source: ObjId::from(i),
                target: ObjId::from(i),
            })
            .collect();
        Self::from_rule(n, morphisms, ids(n).collect(), |second, _| Some(second)).expect("discrete category")
    }

    /// A one-object category from a monoid multiplication table, `table[a][b] = a * b` read as
    /// "b then a".
    pub fn one_object(unit: usize, table: &[Vec<usize>]) -> Result<Self> {
        let n = table.len();
        let morphisms = vec![
            Morphism {
                source: ObjId(0),
                target: ObjId(0)
            };
            n
        ];
        Self::from_rule(1, morphisms, vec![MorId::from(unit)], |second, first| {
            table
                .get(second.index())
                .and_then(|row| row.get(first.index()))
                .map(|&r| MorId::from(r))
        })
    }

    /// The cyclic group of order `n` as a one-object category; morphism `k` is rotation by `k`.
    pub fn cyclic_group(n: usize) -> Self {
        let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::one_object(0, &table).expect("cyclic group")
    }

    /// The chain `0 < 1 < … < n` as a category. Identities come first, then the arrows `i → j`
    /// with `i < j` in lexicographic order.
    pub fn chain(n: usize) -> Self {
        let k = n + 1;
        let mut morphisms = Vec::new();
        let mut index = vec![0; k * k];
        for i in 0..k {
            index[i * k + i] = morphisms.len();
            morphisms.push(Morphism {
                source: ObjId::from(i),
                target: ObjId::from(i),
            });
        }
        for i in 0..k {
            for j in i + 1..k {
                index[i * k + j] = morphisms.len();
                morphisms.push(Morphism {
                    source: ObjId::from(i),
                    target: ObjId::from(j),
                });
            }
        }
        let ends = morphisms.clone();
        Self::from_rule(k, morphisms, ids(k).collect(), |second, first| {
            Some(MorId::from(index[ends[first.index()].source.index() * k + ends[second.index()].target.index()]))
        })
        .expect("chain category")
    }

    pub fn object_count(&self) -> usize {
        self.object_count
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjId> {
        ids(self.object_count)
    }

    pub fn morphism_ids(&self) -> impl Iterator<Item = MorId> {
        ids(self.morphisms.len())
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn morphism(&self, f: MorId) -> Morphism {
        self.morphisms[f.index()]
    }

    pub fn source(&self, f: MorId) -> ObjId {
        self.morphisms[f.index()].source
    }

    pub fn target(&self, f: MorId) -> ObjId {
        self.morphisms[f.index()].target
    }

    pub fn identity(&self, a: ObjId) -> MorId {
        self.identities[a.index()]
    }

    pub fn identities(&self) -> &[MorId] {
        &self.identities
    }

    pub fn is_identity(&self, f: MorId) -> bool {
        let src = self.source(f);
        self.identities[src.index()] == f
    }

    /// Morphisms from `a` to `b`, in id order.
    pub fn hom(&self, a: ObjId, b: ObjId) -> &[MorId] {
        &self.hom[a.index() * self.object_count + b.index()]
    }

    /// The raw table entry for `(second, first)`, whether or not the pair is legal.
    pub fn entry(&self, second: MorId, first: MorId) -> Option<MorId> {
        let m = self.morphisms.len();
        self.composition[second.index() * m + first.index()]
    }

    /// "first, then second".
    pub fn compose(&self, second: MorId, first: MorId) -> Result<MorId> {
        if self.target(first) != self.source(second) {
            return Err(CoreError::BoundaryMismatch(format!(
                "target of {first} is {} but source of {second} is {}",
                self.target(first),
                self.source(second)
            )));
        }
        self.entry(second, first)
            .ok_or_else(|| CoreError::MissingEntry(format!("({second}, {first})")))
    }

    /// Every stored entry as `(second, first, result)`, ordered by `(second, first)`.
    pub fn composition_entries(&self) -> impl Iterator<Item = (MorId, MorId, MorId)> + '_ {
        let m = self.morphisms.len();
        self.composition
            .iter()
            .enumerate()
            .filter_map(move |(k, r)| r.map(|r| (MorId::from(k / m), MorId::from(k % m), r)))
    }

    /// The two-sided inverse of `f`, if there is one.
    pub fn isomorphism_inverse(&self, f: MorId) -> Option<MorId> {
        let (a, b) = (self.source(f), self.target(f));
        self.hom(b, a).iter().copied().find(|&g| {
            self.entry(g, f) == Some(self.identity(a)) && self.entry(f, g) == Some(self.identity(b))
        })
    }

    pub fn is_isomorphism(&self, f: MorId) -> bool {
        self.isomorphism_inverse(f).is_some()
    }

    /// Keeps the morphisms accepted by `keep` (which must contain identities and be closed under
    /// composition) and returns the new category with the old-to-new morphism map.
    pub fn subcategory(&self, keep: impl Fn(MorId) -> bool) -> Result<(Self, Vec<Option<MorId>>)> {
        let mut map = vec![None; self.morphisms.len()];
        let mut morphisms = Vec::new();
        for f in self.morphism_ids() {
            if keep(f) || self.is_identity(f) {
                map[f.index()] = Some(MorId::from(morphisms.len()));
                morphisms.push(self.morphism(f));
            }
        }
        let identities = self
            .identities
            .iter()
            .map(|id| map[id.index()].expect("identity kept"))
            .collect();
        let mut entries = Vec::new();
        for (second, first, r) in self.composition_entries() {
            if let (Some(s), Some(f)) = (map[second.index()], map[first.index()]) {
                let r = map[r.index()].ok_or_else(|| {
                    CoreError::Malformed(format!("subcategory not closed: {second} after {first} is {r}"))
                })?;
                entries.push((s, f, r));
            }
        }
        Ok((Self::new(self.object_count, morphisms, identities, entries)?, map))
    }
}

/// Every violated category law with a witness.
///
/// Law ids: `identity.endpoints`, `composition.missing`, `composition.illegal`,
/// `composition.boundary`, `identity.left`, `identity.right`, `associativity`.
pub fn validate_category(cat: &FiniteCategory) -> ValidationReport {
    let mut report = ValidationReport::new();
    for a in cat.objects() {
        let id = cat.identity(a);
        if cat.source(id) != a || cat.target(id) != a {
            report.push("identity.endpoints", [a.0, id.0]);
        }
    }
    for first in cat.morphism_ids() {
        for second in cat.morphism_ids() {
            let legal = cat.target(first) == cat.source(second);
            match (legal, cat.entry(second, first)) {
                (true, None) => report.push("composition.missing", [second.0, first.0]),
                (false, Some(_)) => report.push("composition.illegal", [second.0, first.0]),
                (true, Some(r)) => {
                    if cat.source(r) != cat.source(first) || cat.target(r) != cat.target(second) {
                        report.push("composition.boundary", [second.0, first.0, r.0]);
                    }
                }
                (false, None) => {}
            }
        }
    }
    for f in cat.morphism_ids() {
        let (a, b) = (cat.source(f), cat.target(f));
        if cat.entry(cat.identity(b), f) != Some(f) {
            report.push("identity.left", [f.0]);
        }
        if cat.entry(f, cat.identity(a)) != Some(f) {
            report.push("identity.right", [f.0]);
        }
    }
    for f in cat.morphism_ids() {
        for g in cat.morphism_ids().filter(|&g| cat.source(g) == cat.target(f)) {
            let Some(gf) = cat.entry(g, f) else { continue };
            for h in cat.morphism_ids().filter(|&h| cat.source(h) == cat.target(g)) {
                let Some(hg) = cat.entry(h, g) else { continue };
                if cat.entry(h, gf) != cat.entry(hg, f) {
                    report.push("associativity", [h.0, g.0, f.0]);
                }
            }
        }
    }
    report
}

/// A finite monoid given by its full operation table; `table[a * size + b]` is `a · b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommMonoidPresentation {
    size: usize,
    unit: ElemId,
    table: Vec<ElemId>,
}

impl CommMonoidPresentation {
    /// Checks only the table shape; laws are checked by [`validate_monoid`].
    pub fn new(size: usize, unit: ElemId, table: Vec<ElemId>) -> Result<Self> {
        if size == 0 || unit.index() >= size {
            return Err(CoreError::Range(format!("unit {unit} outside {size} elements")));
        }
        if table.len() != size * size {
            return Err(CoreError::Malformed(format!(
                "operation table has {} entries, expected {}",
                table.len(),
                size * size
            )));
        }
        Ok(Self { size, unit, table })
    }

    pub fn from_fn(size: usize, unit: usize, op: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let table = (0..size * size).map(|k| ElemId::from(op(k / size, k % size))).collect();
        Self::new(size, ElemId::from(unit), table)
    }

    pub fn trivial() -> Self {
        Self::from_fn(1, 0, |_, _| 0).expect("trivial monoid")
    }

    /// Z/n under addition.
    pub fn cyclic(n: usize) -> Self {
        Self::from_fn(n, 0, |a, b| (a + b) % n).expect("cyclic monoid")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn unit(&self) -> ElemId {
        self.unit
    }

    pub fn elements(&self) -> impl Iterator<Item = ElemId> {
        ids(self.size)
    }

    /// The raw table entry; may be out of range in an invalid presentation.
    pub fn op(&self, a: ElemId, b: ElemId) -> ElemId {
        self.table[a.index() * self.size + b.index()]
    }

    pub fn table(&self) -> &[ElemId] {
        &self.table
    }
}

/// Law ids: `totality`, `unit.left`, `unit.right`, `commutativity`, `associativity`.
pub fn validate_monoid(m: &CommMonoidPresentation) -> ValidationReport {
    let mut report = ValidationReport::new();
    let n = m.size();
    let in_range = |x: ElemId| x.index() < n;
    for a in m.elements() {
        for b in m.elements() {
            if !in_range(m.op(a, b)) {
                report.push("totality", [a.0, b.0]);
            }
        }
    }
    for a in m.elements() {
        if m.op(m.unit(), a) != a {
            report.push("unit.left", [a.0]);
        }
        if m.op(a, m.unit()) != a {
            report.push("unit.right", [a.0]);
        }
    }
    for a in m.elements() {
        for b in m.elements().filter(|b| b.0 > a.0) {
            if m.op(a, b) != m.op(b, a) {
                report.push("commutativity", [a.0, b.0]);
            }
        }
    }
    for a in m.elements() {
        for b in m.elements() {
            let ab = m.op(a, b);
            if !in_range(ab) {
                continue;
            }
            for c in m.elements() {
                let bc = m.op(b, c);
                if !in_range(bc) {
                    continue;
                }
                if m.op(ab, c) != m.op(a, bc) {
                    report.push("associativity", [a.0, b.0, c.0]);
                }
            }
        }
    }
    report
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FunctorTable {
    pub objects: Vec<ObjId>,
    pub morphisms: Vec<MorId>,
}

impl FunctorTable {
    pub fn identity(cat: &FiniteCategory) -> Self {
        Self {
            objects: cat.objects().collect(),
            morphisms: cat.morphism_ids().collect(),
        }
    }

    pub fn object(&self, a: ObjId) -> ObjId {
        self.objects[a.index()]
    }

    pub fn morphism(&self, f: MorId) -> MorId {
        self.morphisms[f.index()]
    }

    /// `self` after `first`, when `first: A → B` and `self: B → C`.
    pub fn after(&self, first: &FunctorTable) -> FunctorTable {
        FunctorTable {
            objects: first.objects.iter().map(|&a| self.object(a)).collect(),
            morphisms: first.morphisms.iter().map(|&f| self.morphism(f)).collect(),
        }
    }
}

/// Law ids: `totality`, `range`, `source`, `target`, `identity`, `composition`.
pub fn validate_functor(functor: &FunctorTable, dom: &FiniteCategory, cod: &FiniteCategory) -> ValidationReport {
    let mut report = ValidationReport::new();
    if functor.objects.len() != dom.object_count() || functor.morphisms.len() != dom.morphism_count() {
        report.push(
            "totality",
            [functor.objects.len() as u32, functor.morphisms.len() as u32],
        );
        return report;
    }
    let mut in_range = true;
    for a in dom.objects() {
        if functor.object(a).index() >= cod.object_count() {
            report.push("range", [a.0]);
            in_range = false;
        }
    }
    for f in dom.morphism_ids() {
        if functor.morphism(f).index() >= cod.morphism_count() {
            report.push("range", [f.0]);
            in_range = false;
        }
    }
    if !in_range {
        return report;
    }
    for f in dom.morphism_ids() {
        let image = functor.morphism(f);
        if cod.source(image) != functor.object(dom.source(f)) {
            report.push("source", [f.0]);
        }
        if cod.target(image) != functor.object(dom.target(f)) {
            report.push("target", [f.0]);
        }
    }
    for a in dom.objects() {
        if functor.morphism(dom.identity(a)) != cod.identity(functor.object(a)) {
            report.push("identity", [a.0]);
        }
    }
    for (second, first, r) in dom.composition_entries() {
        if cod.entry(functor.morphism(second), functor.morphism(first)) != Some(functor.morphism(r)) {
            report.push("composition", [second.0, first.0]);
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arrow(s: u32, t: u32) -> Morphism {
        Morphism {
            source: ObjId(s),
            target: ObjId(t),
        }
    }

    #[test]
    fn one_object_identity_only_is_valid() {
        let cat = FiniteCategory::discrete(1);
        assert!(validate_category(&cat).is_empty());
        assert_eq!(cat.isomorphism_inverse(MorId(0)), Some(MorId(0)));
    }

    #[test]
    fn broken_left_identity_is_named() {
        // objects a, b; f: a -> b; id_b after f wrongly recorded as id_a's slot
        let morphisms = vec![arrow(0, 0), arrow(1, 1), arrow(0, 1)];
        let cat = FiniteCategory::new(
            2,
            morphisms,
            vec![MorId(0), MorId(1)],
            [
                (MorId(0), MorId(0), MorId(0)),
                (MorId(1), MorId(1), MorId(1)),
                (MorId(2), MorId(0), MorId(2)),
                (MorId(1), MorId(2), MorId(0)),
            ],
        )
        .unwrap();
        let report = validate_category(&cat);
        assert_eq!(report.first("identity.left").unwrap().witness, vec![2]);
    }

    #[test]
    fn compose_checks_endpoints() {
        let cat = FiniteCategory::from_rule(2, vec![arrow(0, 0), arrow(1, 1), arrow(0, 1)], vec![MorId(0), MorId(1)], |s, f| {
            Some(if s.0 <= 1 { f } else { s })
        })
        .unwrap();
        assert_eq!(cat.compose(MorId(2), MorId(0)).unwrap(), MorId(2));
        assert_eq!(cat.compose(MorId(1), MorId(2)).unwrap(), MorId(2));
        assert!(matches!(cat.compose(MorId(2), MorId(2)), Err(CoreError::BoundaryMismatch(_))));
        assert!(!cat.is_isomorphism(MorId(2)));
    }

    #[test]
    fn missing_entry_is_reported() {
        let cat = FiniteCategory::new(1, vec![arrow(0, 0)], vec![MorId(0)], []).unwrap();
        assert!(matches!(cat.compose(MorId(0), MorId(0)), Err(CoreError::MissingEntry(_))));
        assert!(validate_category(&cat).has_law("composition.missing"));
    }

    #[test]
    fn noncommutative_table_is_named() {
        // a·b = a, b·a = b is associative but not commutative on {1, a, b}
        let m = CommMonoidPresentation::from_fn(3, 0, |x, y| match (x, y) {
            (0, y) => y,
            (x, 0) => x,
            (x, _) => x,
        })
        .unwrap();
        let report = validate_monoid(&m);
        assert_eq!(report.first("commutativity").unwrap().witness, vec![1, 2]);
        assert!(!report.has_law("associativity"));
    }

    #[test]
    fn trivial_monoid_is_valid() {
        assert!(validate_monoid(&CommMonoidPresentation::trivial()).is_empty());
    }

    #[test]
    fn identity_and_constant_functors_are_valid() {
        let z2 = FiniteCategory::cyclic_group(2);
        assert!(validate_functor(&FunctorTable::identity(&z2), &z2, &z2).is_empty());
        let constant = FunctorTable {
            objects: vec![ObjId(0)],
            morphisms: vec![MorId(0), MorId(0)],
        };
        assert!(validate_functor(&constant, &z2, &z2).is_empty());
        let broken = FunctorTable {
            objects: vec![ObjId(0)],
            morphisms: vec![MorId(1), MorId(1)],
        };
        assert!(validate_functor(&broken, &z2, &z2).has_law("identity"));
    }

    #[test]
    fn subcategory_of_group_keeps_identity() {
        let z4 = FiniteCategory::cyclic_group(4);
        let (sub, map) = z4.subcategory(|f| f.0 % 2 == 0).unwrap();
        assert_eq!(sub.morphism_count(), 2);
        assert_eq!(map[2], Some(MorId(1)));
        assert!(validate_category(&sub).is_empty());
    }
}
