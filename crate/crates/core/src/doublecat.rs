//! Finite strict double categories.
//!
//! A square has a left and right frame (vertical morphisms) and a top and bottom edge (horizontal
//! 1-cells), with `source(left) = hsource(top)`, `source(right) = htarget(top)`,
//! `target(left) = hsource(bottom)` and `target(right) = htarget(bottom)`.
//! Vertical composition is written top to bottom, horizontal composition left to right.

use std::fmt::Debug;
use std::hash::Hash;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::cat::{validate_category, validate_functor, FiniteCategory, FunctorTable};
use crate::error::{CoreError, Result};
use crate::ids::{ids, HorId, MorId, ObjId, SqId};
use crate::report::ValidationReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Boundary {
    pub left: MorId,
    pub right: MorId,
    pub top: HorId,
    pub bottom: HorId,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HorCell {
    pub source: ObjId,
    pub target: ObjId,
}

/// Two frames and a bottom edge, waiting for a square on top.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Niche {
    pub left: MorId,
    pub right: MorId,
    pub bottom: HorId,
}

/// Two frames and a top edge, waiting for a square below.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CoNiche {
    pub left: MorId,
    pub right: MorId,
    pub top: HorId,
}

/// Read access to a strict double category, tabulated or generated.
///
/// Generic searches (cartesian squares, framing, pi2) only go through this trait, so they also
/// run on structures too large to tabulate.
pub trait DoubleCategory {
    type Square: Copy + Eq + Ord + Hash + Debug;

    fn vertical(&self) -> &FiniteCategory;
    fn horizontal_cell_count(&self) -> usize;
    fn horizontal_cell(&self, h: HorId) -> HorCell;
    fn horizontal_unit(&self, a: ObjId) -> HorId;
    fn compose_horizontal(&self, left: HorId, right: HorId) -> Option<HorId>;

    fn boundary(&self, s: Self::Square) -> Boundary;
    fn vcomp(&self, top: Self::Square, bottom: Self::Square) -> Result<Self::Square>;
    fn hcomp(&self, left: Self::Square, right: Self::Square) -> Result<Self::Square>;
    fn unit_square(&self, f: MorId) -> Self::Square;
    fn vertical_identity(&self, h: HorId) -> Self::Square;

    /// All squares with this boundary, ascending.
    fn squares_with_boundary(&self, b: &Boundary) -> Vec<Self::Square>;
    /// All squares with this bottom edge, ascending.
    fn squares_with_bottom(&self, h: HorId) -> Vec<Self::Square>;
    /// All squares with this top edge, ascending.
    fn squares_with_top(&self, h: HorId) -> Vec<Self::Square>;

    fn horizontal_ids(&self) -> Vec<HorId> {
        ids(self.horizontal_cell_count()).collect()
    }

    /// Both frames are identities.
    fn is_globular(&self, s: Self::Square) -> bool {
        let b = self.boundary(s);
        let v = self.vertical();
        v.is_identity(b.left) && v.is_identity(b.right)
    }
}

/// Raw tables of a finite double category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleCategoryParts {
    pub vertical: FiniteCategory,
    pub horizontal_cells: Vec<HorCell>,
    pub horizontal_units: Vec<HorId>,
    /// `(left, right, composite)`
    pub horizontal_composition: Vec<(HorId, HorId, HorId)>,
    pub squares: Vec<Boundary>,
    /// `(top, bottom, composite)`
    pub vcomp: Vec<(SqId, SqId, SqId)>,
    /// `(left, right, composite)`
    pub hcomp: Vec<(SqId, SqId, SqId)>,
    /// `U(f)` for each vertical morphism.
    pub unit_squares: Vec<SqId>,
    /// Identity for vertical composition on each horizontal 1-cell.
    pub vertical_identities: Vec<SqId>,
}

/// A tabulated finite strict double category. Squares are atoms; equality is by [`SqId`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteDoubleCategory {
    vertical: FiniteCategory,
    horizontal_cells: Vec<HorCell>,
    horizontal_units: Vec<HorId>,
    horizontal_composition: FxHashMap<(HorId, HorId), HorId>,
    squares: Vec<Boundary>,
    vcomp: PairTable,
    hcomp: PairTable,
    unit_squares: Vec<SqId>,
    vertical_identities: Vec<SqId>,
    by_top: Vec<Vec<SqId>>,
    by_bottom: Vec<Vec<SqId>>,
    by_left: Vec<Vec<SqId>>,
    by_right: Vec<Vec<SqId>>,
    by_boundary: FxHashMap<Boundary, Vec<SqId>>,
    /// Position of each square in its `by_top` list.
    rank_top: Vec<u32>,
    /// Position of each square in its `by_left` list.
    rank_left: Vec<u32>,
}

const NONE: u32 = u32::MAX;

/// A partial composition table on squares. Legal pairs `(x, y)` are stored densely: the row of
/// `x` is indexed by the rank of `y` in the partner class of `x`. Entries at illegal pairs are
/// kept aside so that validation can report them.
#[derive(Debug, Clone, PartialEq, Eq)]
struct PairTable {
    offsets: Vec<usize>,
    data: Vec<u32>,
    illegal: FxHashMap<(SqId, SqId), SqId>,
}

impl PairTable {
    /// `class_of_partners(x)` is the partner class of `x`, `class(y)` the class `y` belongs to.
    fn new(
        entries: Vec<(SqId, SqId, SqId)>,
        ns: usize,
        classes: &[Vec<SqId>],
        class_of_partners: impl Fn(SqId) -> usize,
        class: impl Fn(SqId) -> usize,
        rank: &[u32],
        what: &str,
    ) -> Result<Self> {
        let mut offsets = Vec::with_capacity(ns + 1);
        let mut total = 0;
        for x in 0..ns {
            offsets.push(total);
            total += classes[class_of_partners(SqId::from(x))].len();
        }
        offsets.push(total);
        let mut data = vec![NONE; total];
        let mut illegal = FxHashMap::default();
        for (a, b, c) in entries {
            if a.index() >= ns || b.index() >= ns || c.index() >= ns {
                return Err(CoreError::Range(format!("{what} entry ({a:?}, {b:?}, {c:?})")));
            }
            let slot = if class_of_partners(a) == class(b) {
                let slot = &mut data[offsets[a.index()] + rank[b.index()] as usize];
                let fresh = *slot == NONE;
                *slot = c.0;
                fresh
            } else {
                illegal.insert((a, b), c).is_none()
            };
            if !slot {
                return Err(CoreError::Malformed(format!("duplicate {what} entry ({a:?}, {b:?})")));
            }
        }
        Ok(Self { offsets, data, illegal })
    }

    fn row(&self, x: SqId) -> &[u32] {
        &self.data[self.offsets[x.index()]..self.offsets[x.index() + 1]]
    }

    fn get(&self, x: SqId, y: SqId, legal: bool, rank: &[u32]) -> Option<SqId> {
        if legal {
            let r = self.row(x)[rank[y.index()] as usize];
            (r != NONE).then_some(SqId(r))
        } else {
            self.illegal.get(&(x, y)).copied()
        }
    }

    fn entries(&self, partners: impl Fn(SqId) -> usize, classes: &[Vec<SqId>]) -> Vec<(SqId, SqId, SqId)> {
        let mut out = Vec::new();
        for x in 0..self.offsets.len() - 1 {
            let x = SqId::from(x);
            for (&y, &r) in classes[partners(x)].iter().zip(self.row(x)) {
                if r != NONE {
                    out.push((x, y, SqId(r)));
                }
            }
        }
        out.extend(self.illegal.iter().map(|(&(a, b), &c)| (a, b, c)));
        out.sort_unstable();
        out
    }

    fn len(&self) -> usize {
        self.data.iter().filter(|&&r| r != NONE).count() + self.illegal.len()
    }
}

fn triple_map<I: Copy + Eq + Hash + Debug>(
    entries: Vec<(I, I, I)>,
    in_range: impl Fn(I) -> bool,
    what: &str,
) -> Result<FxHashMap<(I, I), I>> {
    let mut map = FxHashMap::default();
    map.reserve(entries.len());
    for (a, b, c) in entries {
        if !(in_range(a) && in_range(b) && in_range(c)) {
            return Err(CoreError::Range(format!("{what} entry ({a:?}, {b:?}, {c:?})")));
        }
        if map.insert((a, b), c).is_some() {
            return Err(CoreError::Malformed(format!("duplicate {what} entry ({a:?}, {b:?})")));
        }
    }
    Ok(map)
}

fn sorted_entries<I: Copy + Ord>(map: &FxHashMap<(I, I), I>) -> Vec<(I, I, I)> {
    let mut v: Vec<_> = map.iter().map(|(&(a, b), &c)| (a, b, c)).collect();
    v.sort_unstable();
    v
}

impl FiniteDoubleCategory {
    /// Range-checks the tables and builds lookup indexes; laws are checked by
    /// [`validate_double_category`].
    pub fn new(parts: DoubleCategoryParts) -> Result<Self> {
        let DoubleCategoryParts {
            vertical,
            horizontal_cells,
            horizontal_units,
            horizontal_composition,
            squares,
            vcomp,
            hcomp,
            unit_squares,
            vertical_identities,
        } = parts;
        let objects = vertical.object_count();
        let nh = horizontal_cells.len();
        let ns = squares.len();
        let nm = vertical.morphism_count();
        if horizontal_cells
            .iter()
            .any(|h| h.source.index() >= objects || h.target.index() >= objects)
        {
            return Err(CoreError::Range("horizontal 1-cell endpoint".into()));
        }
        if horizontal_units.len() != objects || horizontal_units.iter().any(|h| h.index() >= nh) {
            return Err(CoreError::Range("horizontal unit table".into()));
        }
        if let Some(b) = squares
            .iter()
            .find(|b| b.left.index() >= nm || b.right.index() >= nm || b.top.index() >= nh || b.bottom.index() >= nh)
        {
            return Err(CoreError::Range(format!("square boundary {b:?}")));
        }
        if unit_squares.len() != nm || unit_squares.iter().any(|s| s.index() >= ns) {
            return Err(CoreError::Range("unit square table".into()));
        }
        if vertical_identities.len() != nh || vertical_identities.iter().any(|s| s.index() >= ns) {
            return Err(CoreError::Range("vertical identity table".into()));
        }
        let horizontal_composition = triple_map(horizontal_composition, |h: HorId| h.index() < nh, "horizontal 1-cell composition")?;
        let mut by_top = vec![Vec::new(); nh];
        let mut by_bottom = vec![Vec::new(); nh];
        let mut by_left = vec![Vec::new(); nm];
        let mut by_right = vec![Vec::new(); nm];
        let mut by_boundary: FxHashMap<Boundary, Vec<SqId>> = FxHashMap::default();
        let mut rank_top = Vec::with_capacity(ns);
        let mut rank_left = Vec::with_capacity(ns);
        for (i, b) in squares.iter().enumerate() {
            let s = SqId::from(i);
            rank_top.push(by_top[b.top.index()].len() as u32);
            rank_left.push(by_left[b.left.index()].len() as u32);
            by_top[b.top.index()].push(s);
            by_bottom[b.bottom.index()].push(s);
            by_left[b.left.index()].push(s);
            by_right[b.right.index()].push(s);
            by_boundary.entry(*b).or_default().push(s);
        }
        let vcomp = PairTable::new(
            vcomp,
            ns,
            &by_top,
            |x| squares[x.index()].bottom.index(),
            |y| squares[y.index()].top.index(),
            &rank_top,
            "vertical square composition",
        )?;
        let hcomp = PairTable::new(
            hcomp,
            ns,
            &by_left,
            |x| squares[x.index()].right.index(),
            |y| squares[y.index()].left.index(),
            &rank_left,
            "horizontal square composition",
        )?;
        Ok(Self {
            vertical,
            horizontal_cells,
            horizontal_units,
            horizontal_composition,
            squares,
            vcomp,
            hcomp,
            unit_squares,
            vertical_identities,
            by_top,
            by_bottom,
            by_left,
            by_right,
            by_boundary,
            rank_top,
            rank_left,
        })
    }

    pub fn parts(&self) -> DoubleCategoryParts {
        DoubleCategoryParts {
            vertical: self.vertical.clone(),
            horizontal_cells: self.horizontal_cells.clone(),
            horizontal_units: self.horizontal_units.clone(),
            horizontal_composition: self.horizontal_composition_entries(),
            squares: self.squares.clone(),
            vcomp: self.vcomp_entries(),
            hcomp: self.hcomp_entries(),
            unit_squares: self.unit_squares.clone(),
            vertical_identities: self.vertical_identities.clone(),
        }
    }

    pub fn vertical(&self) -> &FiniteCategory {
        &self.vertical
    }

    pub fn horizontal_cells(&self) -> &[HorCell] {
        &self.horizontal_cells
    }

    pub fn horizontal_units(&self) -> &[HorId] {
        &self.horizontal_units
    }

    pub fn horizontal_composition_entries(&self) -> Vec<(HorId, HorId, HorId)> {
        sorted_entries(&self.horizontal_composition)
    }

    pub fn vcomp_entries(&self) -> Vec<(SqId, SqId, SqId)> {
        self.vcomp.entries(|x| self.boundary_of(x).bottom.index(), &self.by_top)
    }

    pub fn hcomp_entries(&self) -> Vec<(SqId, SqId, SqId)> {
        self.hcomp.entries(|x| self.boundary_of(x).right.index(), &self.by_left)
    }

    /// Number of entries in the vertical and horizontal composition tables.
    pub fn composition_entry_counts(&self) -> (usize, usize) {
        (self.vcomp.len(), self.hcomp.len())
    }

    pub fn square_count(&self) -> usize {
        self.squares.len()
    }

    pub fn square_ids(&self) -> impl Iterator<Item = SqId> {
        ids(self.squares.len())
    }

    pub fn squares(&self) -> &[Boundary] {
        &self.squares
    }

    pub fn boundary_of(&self, s: SqId) -> Boundary {
        self.squares[s.index()]
    }

    pub fn unit_squares(&self) -> &[SqId] {
        &self.unit_squares
    }

    pub fn vertical_identities(&self) -> &[SqId] {
        &self.vertical_identities
    }

    pub fn unit_square(&self, f: MorId) -> SqId {
        self.unit_squares[f.index()]
    }

    pub fn vertical_identity(&self, h: HorId) -> SqId {
        self.vertical_identities[h.index()]
    }

    pub fn horizontal_cell(&self, h: HorId) -> HorCell {
        self.horizontal_cells[h.index()]
    }

    pub fn compose_horizontal(&self, left: HorId, right: HorId) -> Option<HorId> {
        self.horizontal_composition.get(&(left, right)).copied()
    }

    /// `top` stacked on `bottom`.
    pub fn vcomp(&self, top: SqId, bottom: SqId) -> Result<SqId> {
        let (t, b) = (self.boundary_of(top), self.boundary_of(bottom));
        if t.bottom != b.top {
            return Err(CoreError::BoundaryMismatch(format!(
                "bottom edge {} of {top} is not the top edge {} of {bottom}",
                t.bottom, b.top
            )));
        }
        self.vcomp_entry(top, bottom)
            .ok_or_else(|| CoreError::MissingEntry(format!("vcomp ({top}, {bottom})")))
    }

    /// `left` pasted beside `right`.
    pub fn hcomp(&self, left: SqId, right: SqId) -> Result<SqId> {
        let (l, r) = (self.boundary_of(left), self.boundary_of(right));
        if l.right != r.left {
            return Err(CoreError::BoundaryMismatch(format!(
                "right frame {} of {left} is not the left frame {} of {right}",
                l.right, r.left
            )));
        }
        self.hcomp_entry(left, right)
            .ok_or_else(|| CoreError::MissingEntry(format!("hcomp ({left}, {right})")))
    }

    pub fn vcomp_entry(&self, top: SqId, bottom: SqId) -> Option<SqId> {
        let legal = self.squares[top.index()].bottom == self.squares[bottom.index()].top;
        self.vcomp.get(top, bottom, legal, &self.rank_top)
    }

    pub fn hcomp_entry(&self, left: SqId, right: SqId) -> Option<SqId> {
        let legal = self.squares[left.index()].right == self.squares[right.index()].left;
        self.hcomp.get(left, right, legal, &self.rank_left)
    }

    pub fn is_globular(&self, s: SqId) -> bool {
        let b = self.boundary_of(s);
        self.vertical.is_identity(b.left) && self.vertical.is_identity(b.right)
    }

    /// Globular squares in id order.
    pub fn globular_squares(&self) -> Vec<SqId> {
        self.square_ids().filter(|&s| self.is_globular(s)).collect()
    }

    pub fn with_top(&self, h: HorId) -> &[SqId] {
        &self.by_top[h.index()]
    }

    pub fn with_bottom(&self, h: HorId) -> &[SqId] {
        &self.by_bottom[h.index()]
    }

    pub fn with_left(&self, f: MorId) -> &[SqId] {
        &self.by_left[f.index()]
    }

    pub fn with_right(&self, f: MorId) -> &[SqId] {
        &self.by_right[f.index()]
    }

    pub fn with_boundary(&self, b: &Boundary) -> &[SqId] {
        self.by_boundary.get(b).map_or(&[], Vec::as_slice)
    }

    /// `(bottom, top ⊟ bottom)` for every square that can be stacked under `top`.
    pub fn vcomp_partners_below(&self, top: SqId) -> impl Iterator<Item = (SqId, SqId)> + '_ {
        self.with_top(self.boundary_of(top).bottom)
            .iter()
            .zip(self.vcomp.row(top))
            .filter(|&(_, &r)| r != NONE)
            .map(|(&b, &r)| (b, SqId(r)))
    }

    /// `(right, left □ right)` for every square that can be pasted right of `left`.
    pub fn hcomp_partners_right(&self, left: SqId) -> impl Iterator<Item = (SqId, SqId)> + '_ {
        self.with_left(self.boundary_of(left).right)
            .iter()
            .zip(self.hcomp.row(left))
            .filter(|&(_, &x)| x != NONE)
            .map(|(&r, &x)| (r, SqId(x)))
    }

    /// `(top, top ⊟ bottom)` for every square that can be stacked over `bottom`.
    pub fn vcomp_partners_above(&self, bottom: SqId) -> impl Iterator<Item = (SqId, SqId)> + '_ {
        self.with_bottom(self.boundary_of(bottom).top)
            .iter()
            .filter_map(move |&t| self.vcomp_entry(t, bottom).map(|r| (t, r)))
    }

    /// `(left, left □ right)` for every square that can be pasted left of `right`.
    pub fn hcomp_partners_left(&self, right: SqId) -> impl Iterator<Item = (SqId, SqId)> + '_ {
        self.with_right(self.boundary_of(right).left)
            .iter()
            .filter_map(move |&l| self.hcomp_entry(l, right).map(|x| (l, x)))
    }
}

impl DoubleCategory for FiniteDoubleCategory {
    type Square = SqId;

    fn vertical(&self) -> &FiniteCategory {
        &self.vertical
    }

    fn horizontal_cell_count(&self) -> usize {
        self.horizontal_cells.len()
    }

    fn horizontal_cell(&self, h: HorId) -> HorCell {
        self.horizontal_cells[h.index()]
    }

    fn horizontal_unit(&self, a: ObjId) -> HorId {
        self.horizontal_units[a.index()]
    }

    fn compose_horizontal(&self, left: HorId, right: HorId) -> Option<HorId> {
        FiniteDoubleCategory::compose_horizontal(self, left, right)
    }

    fn boundary(&self, s: SqId) -> Boundary {
        self.boundary_of(s)
    }

    fn vcomp(&self, top: SqId, bottom: SqId) -> Result<SqId> {
        FiniteDoubleCategory::vcomp(self, top, bottom)
    }

    fn hcomp(&self, left: SqId, right: SqId) -> Result<SqId> {
        FiniteDoubleCategory::hcomp(self, left, right)
    }

    fn unit_square(&self, f: MorId) -> SqId {
        self.unit_squares[f.index()]
    }

    fn vertical_identity(&self, h: HorId) -> SqId {
        self.vertical_identities[h.index()]
    }

    fn squares_with_boundary(&self, b: &Boundary) -> Vec<SqId> {
        self.with_boundary(b).to_vec()
    }

    fn squares_with_bottom(&self, h: HorId) -> Vec<SqId> {
        self.with_bottom(h).to_vec()
    }

    fn squares_with_top(&self, h: HorId) -> Vec<SqId> {
        self.with_top(h).to_vec()
    }
}

/// Every violated double category axiom with a witness.
///
/// Law ids are prefixed `vertical.` (the vertical category), `horizontal.` (1-cell composition),
/// `square.` (boundaries), `vcomp.`, `hcomp.`, `unit.` and `interchange`.
pub fn validate_double_category(c: &FiniteDoubleCategory) -> ValidationReport {
    let mut report = ValidationReport::new();
    let v = c.vertical();
    report.absorb("vertical", validate_category(v));
    let cell = |h: HorId| c.horizontal_cell(h);
    let nh = c.horizontal_cells().len();

    // horizontal 1-cells
    for a in v.objects() {
        let u = c.horizontal_units()[a.index()];
        if cell(u).source != a || cell(u).target != a {
            report.push("horizontal.unit.endpoints", [a.0, u.0]);
        }
    }
    let mut starting_at: Vec<Vec<HorId>> = vec![Vec::new(); v.object_count()];
    for h in ids::<HorId>(nh) {
        starting_at[cell(h).source.index()].push(h);
    }
    for l in ids::<HorId>(nh) {
        for &r in &starting_at[cell(l).target.index()] {
            match c.compose_horizontal(l, r) {
                None => report.push("horizontal.composition.missing", [l.0, r.0]),
                Some(x) if cell(x).source != cell(l).source || cell(x).target != cell(r).target => {
                    report.push("horizontal.composition.boundary", [l.0, r.0, x.0])
                }
                _ => {}
            }
        }
    }
    for (l, r, _) in c.horizontal_composition_entries() {
        if cell(l).target != cell(r).source {
            report.push("horizontal.composition.illegal", [l.0, r.0]);
        }
    }
    for h in ids::<HorId>(nh) {
        let hc = cell(h);
        if c.compose_horizontal(c.horizontal_units()[hc.source.index()], h) != Some(h) {
            report.push("horizontal.unit.left", [h.0]);
        }
        if c.compose_horizontal(h, c.horizontal_units()[hc.target.index()]) != Some(h) {
            report.push("horizontal.unit.right", [h.0]);
        }
    }
    for x in ids::<HorId>(nh) {
        for &y in &starting_at[cell(x).target.index()] {
            let Some(xy) = c.compose_horizontal(x, y) else { continue };
            for &z in &starting_at[cell(y).target.index()] {
                let Some(yz) = c.compose_horizontal(y, z) else { continue };
                if c.compose_horizontal(xy, z) != c.compose_horizontal(x, yz) {
                    report.push("horizontal.associativity", [x.0, y.0, z.0]);
                }
            }
        }
    }

    // square boundaries
    for s in c.square_ids() {
        let b = c.boundary_of(s);
        let (top, bottom) = (cell(b.top), cell(b.bottom));
        if v.source(b.left) != top.source
            || v.source(b.right) != top.target
            || v.target(b.left) != bottom.source
            || v.target(b.right) != bottom.target
        {
            report.push("square.boundary", [s.0]);
        }
    }
    let well_formed = !report.has_law("square.boundary");

    // vertical composition: C1 is a category
    for h in ids::<HorId>(nh) {
        let id = c.vertical_identity(h);
        let b = c.boundary_of(id);
        let want = Boundary {
            left: v.identity(cell(h).source),
            right: v.identity(cell(h).target),
            top: h,
            bottom: h,
        };
        if b != want {
            report.push("vcomp.identity.boundary", [h.0, id.0]);
        }
    }
    for top in c.square_ids() {
        let tb = c.boundary_of(top);
        for &bottom in c.with_top(tb.bottom) {
            let bb = c.boundary_of(bottom);
            match c.vcomp_entry(top, bottom) {
                None => report.push("vcomp.missing", [top.0, bottom.0]),
                Some(r) => {
                    let want = Boundary {
                        left: v.entry(bb.left, tb.left).unwrap_or(MorId(u32::MAX)),
                        right: v.entry(bb.right, tb.right).unwrap_or(MorId(u32::MAX)),
                        top: tb.top,
                        bottom: bb.bottom,
                    };
                    if c.boundary_of(r) != want {
                        report.push("vcomp.boundary", [top.0, bottom.0, r.0]);
                    }
                }
            }
        }
    }
    for (top, bottom, _) in c.vcomp_entries() {
        if c.boundary_of(top).bottom != c.boundary_of(bottom).top {
            report.push("vcomp.illegal", [top.0, bottom.0]);
        }
    }
    for s in c.square_ids() {
        let b = c.boundary_of(s);
        if c.vcomp_entry(c.vertical_identity(b.top), s) != Some(s) {
            report.push("vcomp.identity.top", [s.0]);
        }
        if c.vcomp_entry(s, c.vertical_identity(b.bottom)) != Some(s) {
            report.push("vcomp.identity.bottom", [s.0]);
        }
    }
    for x in c.square_ids() {
        for (y, xy) in c.vcomp_partners_below(x) {
            for (z, yz) in c.vcomp_partners_below(y) {
                if c.vcomp_entry(xy, z) != c.vcomp_entry(x, yz) {
                    report.push("vcomp.associativity", [x.0, y.0, z.0]);
                }
            }
        }
    }

    // horizontal composition of squares
    for l in c.square_ids() {
        let lb = c.boundary_of(l);
        for &r in c.with_left(lb.right) {
            let rb = c.boundary_of(r);
            match c.hcomp_entry(l, r) {
                None => report.push("hcomp.missing", [l.0, r.0]),
                Some(x) => {
                    let want = c
                        .compose_horizontal(lb.top, rb.top)
                        .zip(c.compose_horizontal(lb.bottom, rb.bottom))
                        .map(|(top, bottom)| Boundary {
                            left: lb.left,
                            right: rb.right,
                            top,
                            bottom,
                        });
                    if want != Some(c.boundary_of(x)) {
                        report.push("hcomp.boundary", [l.0, r.0, x.0]);
                    }
                }
            }
        }
    }
    for (l, r, _) in c.hcomp_entries() {
        if c.boundary_of(l).right != c.boundary_of(r).left {
            report.push("hcomp.illegal", [l.0, r.0]);
        }
    }
    for s in c.square_ids() {
        let b = c.boundary_of(s);
        if c.hcomp_entry(c.unit_square(b.left), s) != Some(s) {
            report.push("hcomp.identity.left", [s.0]);
        }
        if c.hcomp_entry(s, c.unit_square(b.right)) != Some(s) {
            report.push("hcomp.identity.right", [s.0]);
        }
    }
    for (l, r, x) in c.horizontal_composition_entries() {
        if c.hcomp_entry(c.vertical_identity(l), c.vertical_identity(r)) != Some(c.vertical_identity(x)) {
            report.push("hcomp.preserves_vertical_identities", [l.0, r.0]);
        }
    }
    for x in c.square_ids() {
        for (y, xy) in c.hcomp_partners_right(x) {
            for (z, yz) in c.hcomp_partners_right(y) {
                if c.hcomp_entry(xy, z) != c.hcomp_entry(x, yz) {
                    report.push("hcomp.associativity", [x.0, y.0, z.0]);
                }
            }
        }
    }

    // the unit functor U: C0 → C1
    for f in v.morphism_ids() {
        let u = c.unit_square(f);
        let want = Boundary {
            left: f,
            right: f,
            top: c.horizontal_units()[v.source(f).index()],
            bottom: c.horizontal_units()[v.target(f).index()],
        };
        if c.boundary_of(u) != want {
            report.push("unit.boundary", [f.0, u.0]);
        }
    }
    for a in v.objects() {
        let u = c.unit_square(v.identity(a));
        if u != c.vertical_identity(c.horizontal_units()[a.index()]) {
            report.push("unit.identity", [a.0]);
        }
    }
    for (second, first, composite) in v.composition_entries() {
        if c.vcomp_entry(c.unit_square(first), c.unit_square(second)) != Some(c.unit_square(composite)) {
            report.push("unit.composition", [second.0, first.0]);
        }
    }

    // interchange: (a ⊟ b) □ (c ⊟ d) = (a □ c) ⊟ (b □ d)
    if well_formed {
        let mut below_by_left: FxHashMap<(SqId, MorId), Vec<(SqId, SqId)>> = FxHashMap::default();
        for (top, bottom, r) in c.vcomp_entries() {
            below_by_left.entry((top, c.boundary_of(bottom).left)).or_default().push((bottom, r));
        }
        for a in c.square_ids() {
            for (cc, ac) in c.hcomp_partners_right(a) {
                for (b, ab) in c.vcomp_partners_below(a) {
                    let Some(ds) = below_by_left.get(&(cc, c.boundary_of(b).right)) else { continue };
                    for &(d, cd) in ds {
                        let Some(bd) = c.hcomp_entry(b, d) else { continue };
                        let lhs = c.hcomp_entry(ab, cd);
                        let rhs = c.vcomp_entry(ac, bd);
                        if lhs.is_none() || lhs != rhs {
                            report.push("interchange", [a.0, b.0, cc.0, d.0]);
                        }
                    }
                }
            }
        }
    }
    report
}

/// A strict double functor as tables on vertical morphisms, horizontal 1-cells and squares.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubleFunctorTable {
    pub vertical: FunctorTable,
    pub horizontal: Vec<HorId>,
    pub squares: Vec<SqId>,
}

impl DoubleFunctorTable {
    pub fn identity(c: &FiniteDoubleCategory) -> Self {
        Self {
            vertical: FunctorTable::identity(c.vertical()),
            horizontal: ids(c.horizontal_cells().len()).collect(),
            squares: c.square_ids().collect(),
        }
    }

    pub fn square(&self, s: SqId) -> SqId {
        self.squares[s.index()]
    }

    pub fn horizontal_cell(&self, h: HorId) -> HorId {
        self.horizontal[h.index()]
    }
}

/// Law ids: `vertical.*` (the functor on vertical categories), `horizontal.range`,
/// `horizontal.endpoints`, `horizontal.unit`, `horizontal.composition`, `square.range`,
/// `square.boundary`, `vcomp`, `hcomp`, `unit_square`, `vertical_identity`.
pub fn validate_double_functor(
    functor: &DoubleFunctorTable,
    dom: &FiniteDoubleCategory,
    cod: &FiniteDoubleCategory,
) -> ValidationReport {
    let mut report = ValidationReport::new();
    report.absorb("vertical", validate_functor(&functor.vertical, dom.vertical(), cod.vertical()));
    if !report.is_empty() {
        return report;
    }
    let fv = &functor.vertical;
    if functor.horizontal.len() != dom.horizontal_cells().len()
        || functor.horizontal.iter().any(|h| h.index() >= cod.horizontal_cells().len())
    {
        report.push("horizontal.range", []);
        return report;
    }
    if functor.squares.len() != dom.square_count() || functor.squares.iter().any(|s| s.index() >= cod.square_count())
    {
        report.push("square.range", []);
        return report;
    }
    for h in ids::<HorId>(dom.horizontal_cells().len()) {
        let (d, i) = (dom.horizontal_cell(h), cod.horizontal_cell(functor.horizontal_cell(h)));
        if i.source != fv.object(d.source) || i.target != fv.object(d.target) {
            report.push("horizontal.endpoints", [h.0]);
        }
    }
    for a in dom.vertical().objects() {
        if functor.horizontal_cell(dom.horizontal_units()[a.index()]) != cod.horizontal_units()[fv.object(a).index()] {
            report.push("horizontal.unit", [a.0]);
        }
    }
    for (l, r, x) in dom.horizontal_composition_entries() {
        if cod.compose_horizontal(functor.horizontal_cell(l), functor.horizontal_cell(r)) != Some(functor.horizontal_cell(x)) {
            report.push("horizontal.composition", [l.0, r.0]);
        }
    }
    for s in dom.square_ids() {
        let b = dom.boundary_of(s);
        let want = Boundary {
            left: fv.morphism(b.left),
            right: fv.morphism(b.right),
            top: functor.horizontal_cell(b.top),
            bottom: functor.horizontal_cell(b.bottom),
        };
        if cod.boundary_of(functor.square(s)) != want {
            report.push("square.boundary", [s.0]);
        }
    }
    for (top, bottom, r) in dom.vcomp_entries() {
        if cod.vcomp_entry(functor.square(top), functor.square(bottom)) != Some(functor.square(r)) {
            report.push("vcomp", [top.0, bottom.0]);
        }
    }
    for (l, r, x) in dom.hcomp_entries() {
        if cod.hcomp_entry(functor.square(l), functor.square(r)) != Some(functor.square(x)) {
            report.push("hcomp", [l.0, r.0]);
        }
    }
    for f in dom.vertical().morphism_ids() {
        if functor.square(dom.unit_square(f)) != cod.unit_square(fv.morphism(f)) {
            report.push("unit_square", [f.0]);
        }
    }
    for h in ids::<HorId>(dom.horizontal_cells().len()) {
        if functor.square(dom.vertical_identity(h)) != cod.vertical_identity(functor.horizontal_cell(h)) {
            report.push("vertical_identity", [h.0]);
        }
    }
    report
}

/// Tabulates a generated double category from an explicit list of its squares.
///
/// `budget` caps the number of square pairs that are composed.
pub fn materialize<D: DoubleCategory>(
    d: &D,
    mut squares: Vec<D::Square>,
    budget: u128,
) -> Result<(FiniteDoubleCategory, Vec<D::Square>)> {
    squares.sort_unstable();
    squares.dedup();
    let nh = d.horizontal_cell_count();
    let v = d.vertical();
    let mut index = FxHashMap::default();
    let mut boundaries = Vec::with_capacity(squares.len());
    let mut by_top = vec![Vec::new(); nh];
    let mut by_left = vec![Vec::new(); v.morphism_count()];
    for (i, &s) in squares.iter().enumerate() {
        index.insert(s, SqId::from(i));
        let b = d.boundary(s);
        boundaries.push(b);
        by_top[b.top.index()].push(i);
        by_left[b.left.index()].push(i);
    }
    let vertical_pairs: u128 = boundaries.iter().map(|b| by_top[b.bottom.index()].len() as u128).sum();
    let horizontal_pairs: u128 = boundaries.iter().map(|b| by_left[b.right.index()].len() as u128).sum();
    let needed = squares.len() as u128 + vertical_pairs + horizontal_pairs;
    if needed > budget {
        return Err(CoreError::BudgetExceeded {
            what: "square table entries".into(),
            needed,
            budget,
        });
    }
    let lookup = |s: D::Square| -> Result<SqId> {
        index
            .get(&s)
            .copied()
            .ok_or_else(|| CoreError::IllFormedComposite(format!("composite {s:?} is not in the square list")))
    };
    let mut vcomp = Vec::with_capacity(vertical_pairs as usize);
    let mut hcomp = Vec::with_capacity(horizontal_pairs as usize);
    for (i, b) in boundaries.iter().enumerate() {
        for &j in &by_top[b.bottom.index()] {
            let r = d.vcomp(squares[i], squares[j])?;
            vcomp.push((SqId::from(i), SqId::from(j), lookup(r)?));
        }
        for &j in &by_left[b.right.index()] {
            let r = d.hcomp(squares[i], squares[j])?;
            hcomp.push((SqId::from(i), SqId::from(j), lookup(r)?));
        }
    }
    let horizontal_cells: Vec<HorCell> = (0..nh).map(|h| d.horizontal_cell(HorId::from(h))).collect();
    let mut horizontal_composition = Vec::new();
    for l in 0..nh {
        for r in 0..nh {
            let (l, r) = (HorId::from(l), HorId::from(r));
            if horizontal_cells[l.index()].target == horizontal_cells[r.index()].source {
                if let Some(x) = d.compose_horizontal(l, r) {
                    horizontal_composition.push((l, r, x));
                }
            }
        }
    }
    let parts = DoubleCategoryParts {
        vertical: v.clone(),
        horizontal_units: v.objects().map(|a| d.horizontal_unit(a)).collect(),
        horizontal_cells,
        horizontal_composition,
        squares: boundaries,
        vcomp,
        hcomp,
        unit_squares: v.morphism_ids().map(|f| lookup(d.unit_square(f))).collect::<Result<_>>()?,
        vertical_identities: (0..nh)
            .map(|h| lookup(d.vertical_identity(HorId::from(h))))
            .collect::<Result<_>>()?,
    };
    Ok((FiniteDoubleCategory::new(parts)?, squares))
}

/// A sub-double category together with its inclusion functor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Restriction {
    pub double: FiniteDoubleCategory,
    pub inclusion: DoubleFunctorTable,
}

/// The sub-double category on the vertical morphisms accepted by `keep` (identities are always
/// kept) and on the squares whose two frames are kept. All horizontal 1-cells are kept.
pub fn restrict_frames(c: &FiniteDoubleCategory, keep: impl Fn(MorId) -> bool) -> Result<Restriction> {
    let (vertical, mor_map) = c.vertical().subcategory(&keep)?;
    let mut sq_map = vec![None; c.square_count()];
    let mut kept = Vec::new();
    for s in c.square_ids() {
        let b = c.boundary_of(s);
        if mor_map[b.left.index()].is_some() && mor_map[b.right.index()].is_some() {
            sq_map[s.index()] = Some(SqId::from(kept.len()));
            kept.push(s);
        }
    }
    let map_sq = |s: SqId| sq_map[s.index()];
    let squares = kept
        .iter()
        .map(|&s| {
            let b = c.boundary_of(s);
            Boundary {
                left: mor_map[b.left.index()].expect("kept"),
                right: mor_map[b.right.index()].expect("kept"),
                top: b.top,
                bottom: b.bottom,
            }
        })
        .collect();
    let restrict = |entries: Vec<(SqId, SqId, SqId)>| -> Result<Vec<(SqId, SqId, SqId)>> {
        let mut out = Vec::new();
        for (a, b, r) in entries {
            if let (Some(a), Some(b)) = (map_sq(a), map_sq(b)) {
                let r = map_sq(r).ok_or_else(|| CoreError::Malformed(format!("restriction not closed at {r}")))?;
                out.push((a, b, r));
            }
        }
        Ok(out)
    };
    let old_morphisms: Vec<MorId> = c.vertical().morphism_ids().filter(|f| mor_map[f.index()].is_some()).collect();
    let parts = DoubleCategoryParts {
        vertical,
        horizontal_cells: c.horizontal_cells().to_vec(),
        horizontal_units: c.horizontal_units().to_vec(),
        horizontal_composition: c.horizontal_composition_entries(),
        squares,
        vcomp: restrict(c.vcomp_entries())?,
        hcomp: restrict(c.hcomp_entries())?,
        unit_squares: old_morphisms
            .iter()
            .map(|&f| map_sq(c.unit_square(f)).expect("unit squares have kept frames"))
            .collect(),
        vertical_identities: c
            .vertical_identities()
            .iter()
            .map(|&s| map_sq(s).expect("identity frames are kept"))
            .collect(),
    };
    let double = FiniteDoubleCategory::new(parts)?;
    let inclusion = DoubleFunctorTable {
        vertical: FunctorTable {
            objects: c.vertical().objects().collect(),
            morphisms: old_morphisms,
        },
        horizontal: ids(c.horizontal_cells().len()).collect(),
        squares: kept,
    };
    Ok(Restriction { double, inclusion })
}
