//! Finite strict 2-categories and decorated 2-categories.
//!
//! Horizontal composition of 1-cells and 2-cells is written left to right: `compose(left, right)`
//! for `left: a → b`, `right: b → c`. Vertical composition of 2-cells is written top to bottom:
//! `vertical(top, bottom)` for `top: α ⇒ β`, `bottom: β ⇒ γ`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::cat::{validate_category, FiniteCategory};
use crate::doublecat::FiniteDoubleCategory;
use crate::error::{CoreError, Result};
use crate::ids::{ids, ObjId, OneCellId, TwoCellId};
use crate::report::ValidationReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OneCell {
    pub source: ObjId,
    pub target: ObjId,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TwoCell {
    pub source: OneCellId,
    pub target: OneCellId,
}

/// Raw tables of a finite strict 2-category.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TwoCategoryParts {
    pub object_count: usize,
    pub one_cells: Vec<OneCell>,
    pub one_identities: Vec<OneCellId>,
    /// `(left, right, composite)`
    pub one_composition: Vec<(OneCellId, OneCellId, OneCellId)>,
    pub two_cells: Vec<TwoCell>,
    /// Identity 2-cell of each 1-cell.
    pub two_identities: Vec<TwoCellId>,
    /// `(top, bottom, composite)`
    pub vertical: Vec<(TwoCellId, TwoCellId, TwoCellId)>,
    /// `(left, right, composite)`
    pub horizontal: Vec<(TwoCellId, TwoCellId, TwoCellId)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteTwoCategory {
    object_count: usize,
    one_cells: Vec<OneCell>,
    one_identities: Vec<OneCellId>,
    one_composition: HashMap<(OneCellId, OneCellId), OneCellId>,
    two_cells: Vec<TwoCell>,
    two_identities: Vec<TwoCellId>,
    vertical: HashMap<(TwoCellId, TwoCellId), TwoCellId>,
    horizontal: HashMap<(TwoCellId, TwoCellId), TwoCellId>,
    between: HashMap<(OneCellId, OneCellId), Vec<TwoCellId>>,
}

impl FiniteTwoCategory {
    /// Range-checks the tables; laws are checked by [`validate_two_category`].
    pub fn new(parts: TwoCategoryParts) -> Result<Self> {
        let TwoCategoryParts {
            object_count,
            one_cells,
            one_identities,
            one_composition,
            two_cells,
            two_identities,
            vertical,
            horizontal,
        } = parts;
        let n1 = one_cells.len();
        let n2 = two_cells.len();
        let range = |what: &str| CoreError::Range(what.to_string());
        if one_cells
            .iter()
            .any(|c| c.source.index() >= object_count || c.target.index() >= object_count)
        {
            return Err(range("1-cell endpoint"));
        }
        if one_identities.len() != object_count || one_identities.iter().any(|c| c.index() >= n1) {
            return Err(range("1-cell identity table"));
        }
        if two_cells.iter().any(|t| t.source.index() >= n1 || t.target.index() >= n1) {
            return Err(range("2-cell boundary"));
        }
        if two_identities.len() != n1 || two_identities.iter().any(|t| t.index() >= n2) {
            return Err(range("2-cell identity table"));
        }
        let mut one_map = HashMap::with_capacity(one_composition.len());
        for (l, r, c) in one_composition {
            if [l, r, c].iter().any(|x| x.index() >= n1) {
                return Err(range("1-cell composition entry"));
            }
            if one_map.insert((l, r), c).is_some() {
                return Err(CoreError::Malformed(format!("duplicate 1-cell composite ({l}, {r})")));
            }
        }
        let table = |entries: Vec<(TwoCellId, TwoCellId, TwoCellId)>, what: &str| {
            let mut map = HashMap::with_capacity(entries.len());
            for (a, b, c) in entries {
                if [a, b, c].iter().any(|x| x.index() >= n2) {
                    return Err(range(what));
                }
                if map.insert((a, b), c).is_some() {
                    return Err(CoreError::Malformed(format!("duplicate {what} ({a}, {b})")));
                }
            }
            Ok(map)
        };
        let vertical = table(vertical, "vertical 2-cell composite")?;
        let horizontal = table(horizontal, "horizontal 2-cell composite")?;
        let mut between: HashMap<(OneCellId, OneCellId), Vec<TwoCellId>> = HashMap::new();
        for (i, t) in two_cells.iter().enumerate() {
            between.entry((t.source, t.target)).or_default().push(TwoCellId::from(i));
        }
        Ok(Self {
            object_count,
            one_cells,
            one_identities,
            one_composition: one_map,
            two_cells,
            two_identities,
            vertical,
            horizontal,
            between,
        })
    }

    /// A category viewed as a 2-category with only identity 2-cells.
    pub fn locally_discrete(cat: &FiniteCategory) -> Self {
        let one_cells = cat
            .morphisms()
            .iter()
            .map(|m| OneCell {
                source: m.source,
                target: m.target,
            })
            .collect::<Vec<_>>();
        let n = one_cells.len();
        let as_cell = |m: crate::ids::MorId| OneCellId(m.0);
        let as_two = |m: crate::ids::MorId| TwoCellId(m.0);
        let entries: Vec<_> = cat.composition_entries().collect();
        Self::new(TwoCategoryParts {
            object_count: cat.object_count(),
            one_cells,
            one_identities: cat.identities().iter().map(|&m| as_cell(m)).collect(),
            one_composition: entries.iter().map(|&(s, f, r)| (as_cell(f), as_cell(s), as_cell(r))).collect(),
            two_cells: (0..n)
                .map(|i| TwoCell {
                    source: OneCellId::from(i),
                    target: OneCellId::from(i),
                })
                .collect(),
            two_identities: ids(n).collect(),
            vertical: (0..n).map(|i| (TwoCellId::from(i), TwoCellId::from(i), TwoCellId::from(i))).collect(),
            horizontal: entries.iter().map(|&(s, f, r)| (as_two(f), as_two(s), as_two(r))).collect(),
        })
        .expect("locally discrete 2-category")
    }

    /// One object, one 1-cell, and the monoid elements as 2-cells; both compositions are the
    /// monoid operation.
    pub fn double_suspension(m: &crate::cat::CommMonoidPresentation) -> Self {
        let elems: Vec<TwoCellId> = m.elements().map(|e| TwoCellId(e.0)).collect();
        let op = |a: TwoCellId, b: TwoCellId| TwoCellId(m.op(crate::ids::ElemId(a.0), crate::ids::ElemId(b.0)).0);
        let pairs: Vec<_> = elems
            .iter()
            .flat_map(|&a| elems.iter().map(move |&b| (a, b)))
            .map(|(a, b)| (a, b, op(a, b)))
            .collect();
        Self::new(TwoCategoryParts {
            object_count: 1,
            one_cells: vec![OneCell {
                source: ObjId(0),
                target: ObjId(0),
            }],
            one_identities: vec![OneCellId(0)],
            one_composition: vec![(OneCellId(0), OneCellId(0), OneCellId(0))],
            two_cells: vec![
                TwoCell {
                    source: OneCellId(0),
                    target: OneCellId(0)
                };
                elems.len()
            ],
            two_identities: vec![TwoCellId(m.unit().0)],
            vertical: pairs.clone(),
            horizontal: pairs,
        })
        .expect("double suspension")
    }

    pub fn object_count(&self) -> usize {
        self.object_count
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjId> {
        ids(self.object_count)
    }

    pub fn one_cell_count(&self) -> usize {
        self.one_cells.len()
    }

    pub fn one_cell_ids(&self) -> impl Iterator<Item = OneCellId> {
        ids(self.one_cells.len())
    }

    pub fn one_cell(&self, c: OneCellId) -> OneCell {
        self.one_cells[c.index()]
    }

    pub fn one_cells(&self) -> &[OneCell] {
        &self.one_cells
    }

    pub fn one_identity(&self, a: ObjId) -> OneCellId {
        self.one_identities[a.index()]
    }

    pub fn one_identities(&self) -> &[OneCellId] {
        &self.one_identities
    }

    pub fn compose_one(&self, left: OneCellId, right: OneCellId) -> Option<OneCellId> {
        self.one_composition.get(&(left, right)).copied()
    }

    pub fn one_composition_entries(&self) -> Vec<(OneCellId, OneCellId, OneCellId)> {
        let mut v: Vec<_> = self.one_composition.iter().map(|(&(l, r), &c)| (l, r, c)).collect();
        v.sort_unstable();
        v
    }

    pub fn two_cell_count(&self) -> usize {
        self.two_cells.len()
    }

    pub fn two_cell_ids(&self) -> impl Iterator<Item = TwoCellId> {
        ids(self.two_cells.len())
    }

    pub fn two_cell(&self, t: TwoCellId) -> TwoCell {
        self.two_cells[t.index()]
    }

    pub fn two_cells(&self) -> &[TwoCell] {
        &self.two_cells
    }

    pub fn two_identity(&self, c: OneCellId) -> TwoCellId {
        self.two_identities[c.index()]
    }

    pub fn two_identities(&self) -> &[TwoCellId] {
        &self.two_identities
    }

    /// 2-cells `source ⇒ target`, in id order.
    pub fn two_cells_between(&self, source: OneCellId, target: OneCellId) -> &[TwoCellId] {
        self.between.get(&(source, target)).map_or(&[], Vec::as_slice)
    }

    pub fn vertical(&self, top: TwoCellId, bottom: TwoCellId) -> Result<TwoCellId> {
        if self.two_cell(top).target != self.two_cell(bottom).source {
            return Err(CoreError::BoundaryMismatch(format!(
                "2-cell {top} does not end where {bottom} starts"
            )));
        }
        self.vertical
            .get(&(top, bottom))
            .copied()
            .ok_or_else(|| CoreError::MissingEntry(format!("vertical ({top}, {bottom})")))
    }

    pub fn horizontal(&self, left: TwoCellId, right: TwoCellId) -> Result<TwoCellId> {
        let (l, r) = (self.two_cell(left), self.two_cell(right));
        if self.one_cell(l.source).target != self.one_cell(r.source).source {
            return Err(CoreError::BoundaryMismatch(format!(
                "2-cells {left} and {right} are not horizontally adjacent"
            )));
        }
        self.horizontal
            .get(&(left, right))
            .copied()
            .ok_or_else(|| CoreError::MissingEntry(format!("horizontal ({left}, {right})")))
    }

    pub fn vertical_entries(&self) -> Vec<(TwoCellId, TwoCellId, TwoCellId)> {
        let mut v: Vec<_> = self.vertical.iter().map(|(&(a, b), &c)| (a, b, c)).collect();
        v.sort_unstable();
        v
    }

    pub fn horizontal_entries(&self) -> Vec<(TwoCellId, TwoCellId, TwoCellId)> {
        let mut v: Vec<_> = self.horizontal.iter().map(|(&(a, b), &c)| (a, b, c)).collect();
        v.sort_unstable();
        v
    }

    pub fn parts(&self) -> TwoCategoryParts {
        TwoCategoryParts {
            object_count: self.object_count,
            one_cells: self.one_cells.clone(),
            one_identities: self.one_identities.clone(),
            one_composition: self.one_composition_entries(),
            two_cells: self.two_cells.clone(),
            two_identities: self.two_identities.clone(),
            vertical: self.vertical_entries(),
            horizontal: self.horizontal_entries(),
        }
    }

    /// The endpoints of a 2-cell, which are shared by its source and target 1-cells.
    pub fn two_cell_endpoints(&self, t: TwoCellId) -> (ObjId, ObjId) {
        let c = self.one_cell(self.two_cell(t).source);
        (c.source, c.target)
    }
}

/// Every violated strict 2-category law with a witness.
///
/// Law ids are prefixed `one.` (1-cell category laws), `two.` (2-cell boundaries and vertical
/// laws), `horizontal.` (horizontal laws) and `interchange`.
pub fn validate_two_category(b: &FiniteTwoCategory) -> ValidationReport {
    let mut report = ValidationReport::new();
    let cell = |c: OneCellId| b.one_cell(c);

    // 1-cells
    for a in b.objects() {
        let id = b.one_identity(a);
        if cell(id).source != a || cell(id).target != a {
            report.push("one.identity.endpoints", [a.0, id.0]);
        }
    }
    for l in b.one_cell_ids() {
        for r in b.one_cell_ids() {
            let legal = cell(l).target == cell(r).source;
            match (legal, b.compose_one(l, r)) {
                (true, None) => report.push("one.composition.missing", [l.0, r.0]),
                (false, Some(_)) => report.push("one.composition.illegal", [l.0, r.0]),
                (true, Some(c)) if cell(c).source != cell(l).source || cell(c).target != cell(r).target => {
                    report.push("one.composition.boundary", [l.0, r.0, c.0])
                }
                _ => {}
            }
        }
    }
    for c in b.one_cell_ids() {
        if b.compose_one(b.one_identity(cell(c).source), c) != Some(c) {
            report.push("one.identity.left", [c.0]);
        }
        if b.compose_one(c, b.one_identity(cell(c).target)) != Some(c) {
            report.push("one.identity.right", [c.0]);
        }
    }
    for x in b.one_cell_ids() {
        for y in b.one_cell_ids().filter(|&y| cell(y).source == cell(x).target) {
            let Some(xy) = b.compose_one(x, y) else { continue };
            for z in b.one_cell_ids().filter(|&z| cell(z).source == cell(y).target) {
                let Some(yz) = b.compose_one(y, z) else { continue };
                if b.compose_one(xy, z) != b.compose_one(x, yz) {
                    report.push("one.associativity", [x.0, y.0, z.0]);
                }
            }
        }
    }

    // 2-cell boundaries and vertical structure
    for t in b.two_cell_ids() {
        let tc = b.two_cell(t);
        if cell(tc.source).source != cell(tc.target).source || cell(tc.source).target != cell(tc.target).target {
            report.push("two.parallel", [t.0]);
        }
    }
    for c in b.one_cell_ids() {
        let id = b.two_identity(c);
        if b.two_cell(id) != (TwoCell { source: c, target: c }) {
            report.push("two.identity.boundary", [c.0, id.0]);
        }
    }
    for top in b.two_cell_ids() {
        let tt = b.two_cell(top);
        for bottom in b
            .one_cell_ids()
            .flat_map(|c| b.two_cells_between(tt.target, c).iter().copied())
            .collect::<Vec<_>>()
        {
            match b.vertical.get(&(top, bottom)) {
                None => report.push("two.vertical.missing", [top.0, bottom.0]),
                Some(&r) => {
                    let want = TwoCell {
                        source: tt.source,
                        target: b.two_cell(bottom).target,
                    };
                    if b.two_cell(r) != want {
                        report.push("two.vertical.boundary", [top.0, bottom.0, r.0]);
                    }
                }
            }
        }
    }
    for &(top, bottom) in b.vertical.keys() {
        if b.two_cell(top).target != b.two_cell(bottom).source {
            report.push("two.vertical.illegal", [top.0, bottom.0]);
        }
    }
    for t in b.two_cell_ids() {
        let tc = b.two_cell(t);
        if b.vertical.get(&(b.two_identity(tc.source), t)) != Some(&t) {
            report.push("two.vertical.identity.top", [t.0]);
        }
        if b.vertical.get(&(t, b.two_identity(tc.target))) != Some(&t) {
            report.push("two.vertical.identity.bottom", [t.0]);
        }
    }
    let below = |t: TwoCellId| -> Vec<TwoCellId> {
        let target = b.two_cell(t).target;
        b.one_cell_ids()
            .flat_map(|c| b.two_cells_between(target, c).iter().copied())
            .collect()
    };
    for x in b.two_cell_ids() {
        for y in below(x) {
            let Some(&xy) = b.vertical.get(&(x, y)) else { continue };
            for z in below(y) {
                let Some(&yz) = b.vertical.get(&(y, z)) else { continue };
                if b.vertical.get(&(xy, z)) != b.vertical.get(&(x, yz)) {
                    report.push("two.vertical.associativity", [x.0, y.0, z.0]);
                }
            }
        }
    }

    // horizontal structure
    let endpoints = |t: TwoCellId| b.two_cell_endpoints(t);
    let mut right_of: HashMap<ObjId, Vec<TwoCellId>> = HashMap::new();
    for t in b.two_cell_ids() {
        right_of.entry(endpoints(t).0).or_default().push(t);
    }
    let adjacent = |t: TwoCellId| right_of.get(&endpoints(t).1).cloned().unwrap_or_default();
    for l in b.two_cell_ids() {
        for r in adjacent(l) {
            match b.horizontal.get(&(l, r)) {
                None => report.push("horizontal.missing", [l.0, r.0]),
                Some(&c) => {
                    let (lc, rc) = (b.two_cell(l), b.two_cell(r));
                    let want = b
                        .compose_one(lc.source, rc.source)
                        .zip(b.compose_one(lc.target, rc.target))
                        .map(|(s, t)| TwoCell { source: s, target: t });
                    if want != Some(b.two_cell(c)) {
                        report.push("horizontal.boundary", [l.0, r.0, c.0]);
                    }
                }
            }
        }
    }
    for &(l, r) in b.horizontal.keys() {
        if endpoints(l).1 != endpoints(r).0 {
            report.push("horizontal.illegal", [l.0, r.0]);
        }
    }
    for t in b.two_cell_ids() {
        let (s, e) = endpoints(t);
        let left_unit = b.two_identity(b.one_identity(s));
        let right_unit = b.two_identity(b.one_identity(e));
        if b.horizontal.get(&(left_unit, t)) != Some(&t) {
            report.push("horizontal.identity.left", [t.0]);
        }
        if b.horizontal.get(&(t, right_unit)) != Some(&t) {
            report.push("horizontal.identity.right", [t.0]);
        }
    }
    for (l, r, c) in b.one_composition_entries() {
        let lhs = b.horizontal.get(&(b.two_identity(l), b.two_identity(r)));
        if lhs != Some(&b.two_identity(c)) {
            report.push("horizontal.preserves_identities", [l.0, r.0]);
        }
    }
    for x in b.two_cell_ids() {
        for y in adjacent(x) {
            let Some(&xy) = b.horizontal.get(&(x, y)) else { continue };
            for z in adjacent(y) {
                let Some(&yz) = b.horizontal.get(&(y, z)) else { continue };
                if b.horizontal.get(&(xy, z)) != b.horizontal.get(&(x, yz)) {
                    report.push("horizontal.associativity", [x.0, y.0, z.0]);
                }
            }
        }
    }

    // interchange: (a ⊟ b) □ (c ⊟ d) = (a □ c) ⊟ (b □ d)
    for a in b.two_cell_ids() {
        for c in adjacent(a) {
            let Some(&ac) = b.horizontal.get(&(a, c)) else { continue };
            for bb in below(a) {
                let Some(&ab) = b.vertical.get(&(a, bb)) else { continue };
                for d in below(c) {
                    let Some(&cd) = b.vertical.get(&(c, d)) else { continue };
                    let Some(&bd) = b.horizontal.get(&(bb, d)) else { continue };
                    let lhs = b.horizontal.get(&(ab, cd));
                    let rhs = b.vertical.get(&(ac, bd));
                    if lhs != rhs || lhs.is_none() {
                        report.push("interchange", [a.0, bb.0, c.0, d.0]);
                    }
                }
            }
        }
    }
    report
}

/// A 2-category `b` together with a category `bstar` on the same objects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecoratedTwoCategory {
    pub bstar: FiniteCategory,
    pub b: FiniteTwoCategory,
}

/// Empty iff both parts share their object set.
pub fn validate_decoration(d: &DecoratedTwoCategory) -> ValidationReport {
    let mut report = ValidationReport::new();
    if d.bstar.object_count() != d.b.object_count() {
        report.push(
            "objects.mismatch",
            [d.bstar.object_count() as u32, d.b.object_count() as u32],
        );
    }
    report
}

/// Full validation of both parts and the decoration condition.
pub fn validate_decorated(d: &DecoratedTwoCategory) -> ValidationReport {
    let mut report = validate_decoration(d);
    report.absorb("decoration", validate_category(&d.bstar));
    report.absorb("two_category", validate_two_category(&d.b));
    report
}

/// The vertical category of `c` together with the 2-category of its horizontal 1-cells and
/// globular squares. 2-cell `i` is the `i`-th globular square of `c` in id order, see
/// [`FiniteDoubleCategory::globular_squares`].
pub fn decorated_horizontalization(c: &FiniteDoubleCategory) -> Result<DecoratedTwoCategory> {
    let globular = c.globular_squares();
    let mut cell_of = HashMap::with_capacity(globular.len());
    for (i, &s) in globular.iter().enumerate() {
        cell_of.insert(s, TwoCellId::from(i));
    }
    let one_cells = c
        .horizontal_cells()
        .iter()
        .map(|h| OneCell {
            source: h.source,
            target: h.target,
        })
        .collect();
    let two_cells = globular
        .iter()
        .map(|&s| {
            let bd = c.boundary_of(s);
            TwoCell {
                source: OneCellId(bd.top.0),
                target: OneCellId(bd.bottom.0),
            }
        })
        .collect();
    let mut vertical = Vec::new();
    let mut horizontal = Vec::new();
    for &s in &globular {
        for (t, r) in c.vcomp_partners_below(s) {
            if let (Some(&ct), Some(&cr)) = (cell_of.get(&t), cell_of.get(&r)) {
                vertical.push((cell_of[&s], ct, cr));
            }
        }
        for (t, r) in c.hcomp_partners_right(s) {
            if let (Some(&ct), Some(&cr)) = (cell_of.get(&t), cell_of.get(&r)) {
                horizontal.push((cell_of[&s], ct, cr));
            }
        }
    }
    vertical.sort_unstable();
    horizontal.sort_unstable();
    let two_identities = c
        .vertical_identities()
        .iter()
        .map(|s| {
            cell_of
                .get(s)
                .copied()
                .ok_or_else(|| CoreError::Malformed(format!("vertical identity {s} is not globular")))
        })
        .collect::<Result<_>>()?;
    let b = FiniteTwoCategory::new(TwoCategoryParts {
        object_count: c.vertical().object_count(),
        one_cells,
        one_identities: c.horizontal_units().iter().map(|h| OneCellId(h.0)).collect(),
        one_composition: c
            .horizontal_composition_entries()
            .into_iter()
            .map(|(l, r, x)| (OneCellId(l.0), OneCellId(r.0), OneCellId(x.0)))
            .collect(),
        two_cells,
        two_identities,
        vertical,
        horizontal,
    })?;
    Ok(DecoratedTwoCategory {
        bstar: c.vertical().clone(),
        b,
    })
}
