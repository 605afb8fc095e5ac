//! The crossed product B ⋊_Φ B* of a decorated 2-category by a π₂-(op)indexing, and its
//! evaluation functor into any double category inducing Φ.
//!
//! A non-globular square is a triple `(down, f, up)` with `f: a → b` not an identity,
//! `up: α ⇒ id_a` and `down: id_b ⇒ β`; read top to bottom it is `up`, then `U(f)`, then `down`.
//! Triples are identified along elements ν of π₂ that slide across `U(f)`.

use petgraph::unionfind::UnionFind;
use rustc_hash::{FxHashMap, FxHashSet};
use serde::Serialize;

use crate::doublecat::{
    validate_double_category, validate_double_functor, Boundary, DoubleCategoryParts, DoubleFunctorTable,
    FiniteDoubleCategory, HorCell,
};
use crate::cat::FunctorTable;
use crate::error::{CoreError, Result};
use crate::ids::{ids, ElemId, HorId, MorId, SqId, TwoCellId};
use crate::indexing::{check_induces, validate_indexing, Direction, Pi2Indexing};
use crate::length::globularly_generated_piece;
use crate::report::ValidationReport;
use crate::twocat::{decorated_horizontalization, validate_decorated, FiniteTwoCategory};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CpSquare {
    Globular(TwoCellId),
    Triple { down: TwoCellId, frame: MorId, up: TwoCellId },
}

impl CpSquare {
    /// Sort key: globular squares first, then triples by `(down, frame, up)`.
    fn key(self) -> (u8, u32, u32, u32) {
        match self {
            CpSquare::Globular(t) => (0, t.0, 0, 0),
            CpSquare::Triple { down, frame, up } => (1, down.0, frame.0, up.0),
        }
    }
}

fn b_of(phi: &Pi2Indexing) -> &FiniteTwoCategory {
    &phi.base.b
}

/// Boundary of a crossed-product square; horizontal 1-cells are the 1-cells of B.
pub fn cp_boundary(phi: &Pi2Indexing, s: CpSquare) -> Result<Boundary> {
    let b = b_of(phi);
    let bstar = &phi.base.bstar;
    let check_cell = |t: TwoCellId| {
        if t.index() < b.two_cell_count() {
            Ok(b.two_cell(t))
        } else {
            Err(CoreError::Range(format!("2-cell {t}")))
        }
    };
    match s {
        CpSquare::Globular(t) => {
            let cell = check_cell(t)?;
            let (x, y) = b.two_cell_endpoints(t);
            Ok(Boundary {
                left: bstar.identity(x),
                right: bstar.identity(y),
                top: HorId(cell.source.0),
                bottom: HorId(cell.target.0),
            })
        }
        CpSquare::Triple { down, frame, up } => {
            if frame.index() >= bstar.morphism_count() || bstar.is_identity(frame) {
                return Err(CoreError::Malformed(format!("triple frame {frame} must be a non-identity morphism")));
            }
            let (dc, uc) = (check_cell(down)?, check_cell(up)?);
            let (a, bb) = (bstar.source(frame), bstar.target(frame));
            if uc.target != b.one_identity(a) || dc.source != b.one_identity(bb) {
                return Err(CoreError::BoundaryMismatch(format!(
                    "triple ({down}, {frame}, {up}) does not pass through the unit 1-cells"
                )));
            }
            Ok(Boundary {
                left: frame,
                right: frame,
                top: HorId(uc.source.0),
                bottom: HorId(dc.target.0),
            })
        }
    }
}

/// A triple over an identity becomes the globular `up ⊟ down`.
fn normalize(phi: &Pi2Indexing, down: TwoCellId, frame: MorId, up: TwoCellId) -> Result<CpSquare> {
    if phi.base.bstar.is_identity(frame) {
        Ok(CpSquare::Globular(b_of(phi).vertical(up, down)?))
    } else {
        Ok(CpSquare::Triple { down, frame, up })
    }
}

/// One step of the ν-relation: `Some(ν)` if `s` and `t` are related by ν directly.
///
/// For opindexings ν ∈ π₂(b) with `s.down = ν ⊟ t.down` and `t.up = s.up ⊟ Φ_f(ν)`; for
/// indexings ν ∈ π₂(a) with `s.up = t.up ⊟ ν` and `t.down = Φ_f(ν) ⊟ s.down`. Globular squares
/// are related only to themselves, by the unit.
pub fn cp_equal(phi: &Pi2Indexing, s: CpSquare, t: CpSquare) -> Result<Option<ElemId>> {
    let (bs, bt) = (cp_boundary(phi, s)?, cp_boundary(phi, t)?);
    if bs != bt {
        return Err(CoreError::BoundaryMismatch(format!("{s:?} and {t:?} have different boundaries")));
    }
    let b = b_of(phi);
    match (s, t) {
        (CpSquare::Globular(x), CpSquare::Globular(y)) => {
            let at = b.two_cell_endpoints(x).0;
            Ok((x == y).then(|| phi.monoids[at.index()].presentation.unit()))
        }
        (
            CpSquare::Triple { down: sd, frame: f, up: su },
            CpSquare::Triple { down: td, up: tu, .. },
        ) => {
            let at = phi.domain_object(f);
            let monoid = &phi.monoids[at.index()];
            for (i, &nu) in monoid.elements.iter().enumerate() {
                let x = ElemId::from(i);
                let moved = phi.apply_cell(f, nu)?;
                let related = match phi.direction {
                    Direction::Opindexing => b.vertical(nu, td)? == sd && b.vertical(su, moved)? == tu,
                    Direction::Indexing => b.vertical(tu, nu)? == su && b.vertical(moved, sd)? == td,
                };
                if related {
                    return Ok(Some(x));
                }
            }
            Ok(None)
        }
        _ => Ok(None),
    }
}

/// `top` stacked on `bottom`.
pub fn cp_vcomp(phi: &Pi2Indexing, top: CpSquare, bottom: CpSquare) -> Result<CpSquare> {
    let (bt, bb) = (cp_boundary(phi, top)?, cp_boundary(phi, bottom)?);
    if bt.bottom != bb.top {
        return Err(CoreError::BoundaryMismatch(format!(
            "bottom edge {} of {top:?} is not the top edge {} of {bottom:?}",
            bt.bottom, bb.top
        )));
    }
    let b = b_of(phi);
    let bstar = &phi.base.bstar;
    match (top, bottom) {
        (CpSquare::Globular(x), CpSquare::Globular(y)) => Ok(CpSquare::Globular(b.vertical(x, y)?)),
        (CpSquare::Globular(theta), CpSquare::Triple { down, frame, up }) => {
            Ok(CpSquare::Triple { down, frame, up: b.vertical(theta, up)? })
        }
        (CpSquare::Triple { down, frame, up }, CpSquare::Globular(theta)) => {
            Ok(CpSquare::Triple { down: b.vertical(down, theta)?, frame, up })
        }
        (
            CpSquare::Triple { down: d1, frame: f, up: u1 },
            CpSquare::Triple { down: d2, frame: g, up: u2 },
        ) => {
            let middle = b.vertical(d1, u2)?;
            let gf = bstar.compose(g, f)?;
            match phi.direction {
                Direction::Opindexing => {
                    let slid = phi.apply_cell(f, middle)?;
                    normalize(phi, d2, gf, b.vertical(u1, slid)?)
                }
                Direction::Indexing => {
                    let slid = phi.apply_cell(g, middle)?;
                    normalize(phi, b.vertical(slid, d2)?, gf, u1)
                }
            }
        }
    }
}

/// `left` pasted beside `right`.
pub fn cp_hcomp(phi: &Pi2Indexing, left: CpSquare, right: CpSquare) -> Result<CpSquare> {
    let (bl, br) = (cp_boundary(phi, left)?, cp_boundary(phi, right)?);
    if bl.right != br.left {
        return Err(CoreError::BoundaryMismatch(format!(
            "right frame {} of {left:?} is not the left frame {} of {right:?}",
            bl.right, br.left
        )));
    }
    let b = b_of(phi);
    match (left, right) {
        (CpSquare::Globular(x), CpSquare::Globular(y)) => Ok(CpSquare::Globular(b.horizontal(x, y)?)),
        (
            CpSquare::Triple { down: d1, frame, up: u1 },
            CpSquare::Triple { down: d2, up: u2, .. },
        ) => Ok(CpSquare::Triple {
            down: b.horizontal(d1, d2)?,
            frame,
            up: b.horizontal(u1, u2)?,
        }),
        _ => Err(CoreError::BoundaryMismatch("a triple never shares a frame with a globular square".into())),
    }
}

pub fn cp_unit_square(phi: &Pi2Indexing, f: MorId) -> CpSquare {
    let bstar = &phi.base.bstar;
    let b = b_of(phi);
    let (x, y) = (bstar.source(f), bstar.target(f));
    if bstar.is_identity(f) {
        CpSquare::Globular(b.two_identity(b.one_identity(x)))
    } else {
        CpSquare::Triple {
            down: b.two_identity(b.one_identity(y)),
            frame: f,
            up: b.two_identity(b.one_identity(x)),
        }
    }
}

/// All triples, sorted by `(down, frame, up)`.
pub fn all_triples(phi: &Pi2Indexing) -> Vec<CpSquare> {
    let b = b_of(phi);
    let bstar = &phi.base.bstar;
    let mut downs: Vec<Vec<TwoCellId>> = vec![Vec::new(); bstar.object_count()];
    let mut ups: Vec<Vec<TwoCellId>> = vec![Vec::new(); bstar.object_count()];
    for t in b.two_cell_ids() {
        let cell = b.two_cell(t);
        let (x, _) = b.two_cell_endpoints(t);
        if cell.source == b.one_identity(x) {
            downs[x.index()].push(t);
        }
        if cell.target == b.one_identity(x) {
            ups[x.index()].push(t);
        }
    }
    let mut out = Vec::new();
    for f in bstar.morphism_ids().filter(|&f| !bstar.is_identity(f)) {
        for &down in &downs[bstar.target(f).index()] {
            for &up in &ups[bstar.source(f).index()] {
                out.push(CpSquare::Triple { down, frame: f, up });
            }
        }
    }
    out.sort_unstable_by_key(|s| s.key());
    out
}

/// All one-step ν-related pairs among triples, by forward generation.
fn one_step_pairs(phi: &Pi2Indexing, triples: &[CpSquare]) -> Result<Vec<(CpSquare, CpSquare)>> {
    let b = b_of(phi);
    let mut pairs = Vec::new();
    // Each triple supplies the down cell of one side and the up cell of the other.
    for &t in triples {
        let CpSquare::Triple { down, frame: f, up } = t else { continue };
        let monoid = &phi.monoids[phi.domain_object(f).index()];
        for &nu in &monoid.elements {
            let moved = phi.apply_cell(f, nu)?;
            let (s, r) = match phi.direction {
                Direction::Opindexing => (
                    CpSquare::Triple { down: b.vertical(nu, down)?, frame: f, up },
                    CpSquare::Triple { down, frame: f, up: b.vertical(up, moved)? },
                ),
                Direction::Indexing => (
                    CpSquare::Triple { down, frame: f, up: b.vertical(up, nu)? },
                    CpSquare::Triple { down: b.vertical(moved, down)?, frame: f, up },
                ),
            };
            pairs.push((s, r));
        }
    }
    Ok(pairs)
}

/// B ⋊_Φ B* as a tabulated double category.
///
/// Square ids: 2-cell `i` of B is square `i`; the triple classes follow, ordered by their least
/// representative.
#[derive(Debug, Clone)]
pub struct CrossedProduct {
    pub indexing: Pi2Indexing,
    pub double: FiniteDoubleCategory,
    pub representatives: Vec<CpSquare>,
    pub class_of: FxHashMap<CpSquare, SqId>,
    /// Whether the one-step ν-relation was already an equivalence relation.
    pub one_step_is_closed: bool,
}

impl CrossedProduct {
    pub fn representative(&self, s: SqId) -> Result<CpSquare> {
        self.representatives.get(s.index()).copied().ok_or(CoreError::UnknownSquare(s))
    }

    pub fn square_of(&self, s: CpSquare) -> Result<SqId> {
        self.class_of
            .get(&s)
            .copied()
            .ok_or_else(|| CoreError::Malformed(format!("{s:?} is not a crossed-product square")))
    }

    /// Closure equality: same class.
    pub fn same_class(&self, s: CpSquare, t: CpSquare) -> Result<bool> {
        Ok(self.square_of(s)? == self.square_of(t)?)
    }

    /// Members of each class, in increasing order.
    pub fn classes(&self) -> Vec<Vec<CpSquare>> {
        let mut out = vec![Vec::new(); self.representatives.len()];
        for (&s, &c) in &self.class_of {
            out[c.index()].push(s);
        }
        for v in &mut out {
            v.sort_unstable_by_key(|s| s.key());
        }
        out
    }
}

/// Builds the crossed product, refusing if more than `budget` squares and composable pairs would
/// have to be tabulated. The result is validated before it is returned.
pub fn build_crossed_product(phi: &Pi2Indexing, budget: u128) -> Result<CrossedProduct> {
    let report = validate_decorated(&phi.base);
    if !report.is_empty() {
        return Err(CoreError::Invalid { context: "decorated 2-category", report });
    }
    let report = validate_indexing(phi);
    if !report.is_empty() {
        return Err(CoreError::Invalid { context: "indexing", report });
    }
    let b = b_of(phi);
    let bstar = &phi.base.bstar;
    let triples = all_triples(phi);
    let n2 = b.two_cell_count();
    if (n2 + triples.len()) as u128 > budget {
        return Err(CoreError::BudgetExceeded {
            what: "crossed-product squares".into(),
            needed: (n2 + triples.len()) as u128,
            budget,
        });
    }
    let index: FxHashMap<CpSquare, usize> = triples.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let mut uf = UnionFind::<usize>::new(triples.len());
    let pairs = one_step_pairs(phi, &triples)?;
    let mut related = FxHashSet::default();
    for &(s, t) in &pairs {
        let (i, j) = (index[&s], index[&t]);
        uf.union(i, j);
        related.insert((i, j));
    }
    // classes in order of least member
    let mut class_of_root: FxHashMap<usize, usize> = FxHashMap::default();
    let mut representatives: Vec<CpSquare> = b.two_cell_ids().map(CpSquare::Globular).collect();
    let mut class_sizes = Vec::new();
    let mut class_of: FxHashMap<CpSquare, SqId> =
        b.two_cell_ids().map(|t| (CpSquare::Globular(t), SqId(t.0))).collect();
    for (i, &s) in triples.iter().enumerate() {
        let root = uf.find_mut(i);
        let next = class_of_root.len();
        let c = *class_of_root.entry(root).or_insert_with(|| {
            representatives.push(s);
            class_sizes.push(0usize);
            next
        });
        class_sizes[c] += 1;
        class_of.insert(s, SqId::from(n2 + c));
    }
    let closure_pairs: usize = class_sizes.iter().map(|k| k * k).sum();
    let one_step_is_closed = related.len() == closure_pairs;

    let boundaries: Vec<Boundary> = representatives.iter().map(|&s| cp_boundary(phi, s)).collect::<Result<_>>()?;
    let nh = b.one_cell_count();
    let mut by_top = vec![Vec::new(); nh];
    let mut by_left = vec![Vec::new(); bstar.morphism_count()];
    for (i, bd) in boundaries.iter().enumerate() {
        by_top[bd.top.index()].push(i);
        by_left[bd.left.index()].push(i);
    }
    let needed: u128 = boundaries
        .iter()
        .map(|bd| (by_top[bd.bottom.index()].len() + by_left[bd.right.index()].len()) as u128)
        .sum::<u128>()
        + representatives.len() as u128;
    if needed > budget {
        return Err(CoreError::BudgetExceeded {
            what: "crossed-product table entries".into(),
            needed,
            budget,
        });
    }
    let class = |s: CpSquare| -> Result<SqId> {
        class_of
            .get(&s)
            .copied()
            .ok_or_else(|| CoreError::IllFormedComposite(format!("{s:?}")))
    };
    let mut vcomp = Vec::new();
    let mut hcomp = Vec::new();
    for (i, bd) in boundaries.iter().enumerate() {
        for &j in &by_top[bd.bottom.index()] {
            let r = cp_vcomp(phi, representatives[i], representatives[j])?;
            vcomp.push((SqId::from(i), SqId::from(j), class(r)?));
        }
        for &j in &by_left[bd.right.index()] {
            let r = cp_hcomp(phi, representatives[i], representatives[j])?;
            hcomp.push((SqId::from(i), SqId::from(j), class(r)?));
        }
    }
    let parts = DoubleCategoryParts {
        vertical: bstar.clone(),
        horizontal_cells: b
            .one_cells()
            .iter()
            .map(|c| HorCell { source: c.source, target: c.target })
            .collect(),
        horizontal_units: b.one_identities().iter().map(|c| HorId(c.0)).collect(),
        horizontal_composition: b
            .one_composition_entries()
            .into_iter()
            .map(|(l, r, x)| (HorId(l.0), HorId(r.0), HorId(x.0)))
            .collect(),
        squares: boundaries,
        vcomp,
        hcomp,
        unit_squares: bstar.morphism_ids().map(|f| class(cp_unit_square(phi, f))).collect::<Result<_>>()?,
        vertical_identities: b.two_identities().iter().map(|t| SqId(t.0)).collect(),
    };
    let double = FiniteDoubleCategory::new(parts)?;
    let report = validate_double_category(&double);
    if !report.is_empty() {
        return Err(CoreError::Invalid { context: "crossed product", report });
    }
    Ok(CrossedProduct {
        indexing: phi.clone(),
        double,
        representatives,
        class_of,
        one_step_is_closed,
    })
}

/// Both compositions computed on arbitrary class members land in the class of the composite of
/// representatives.
///
/// Law ids: `vcomp.well_defined`, `hcomp.well_defined` (witness: the two square ids).
pub fn check_well_defined(q: &CrossedProduct) -> Result<ValidationReport> {
    let mut report = ValidationReport::new();
    let phi = &q.indexing;
    let classes = q.classes();
    let d = &q.double;
    for s in d.square_ids() {
        for (t, r) in d.vcomp_partners_below(s) {
            'v: for &x in &classes[s.index()] {
                for &y in &classes[t.index()] {
                    if q.square_of(cp_vcomp(phi, x, y)?)? != r {
                        report.push("vcomp.well_defined", [s.0, t.0]);
                        break 'v;
                    }
                }
            }
        }
        for (t, r) in d.hcomp_partners_right(s) {
            'h: for &x in &classes[s.index()] {
                for &y in &classes[t.index()] {
                    if q.square_of(cp_hcomp(phi, x, y)?)? != r {
                        report.push("hcomp.well_defined", [s.0, t.0]);
                        break 'h;
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Class equality is an equivalence relation that contains the one-step ν-relation and is
/// generated by it.
///
/// Law ids: `reflexive`, `symmetric`, `transitive`, `contains_one_step`, `generated`
/// (witness: square ids or class id).
pub fn check_equivalence(q: &CrossedProduct) -> Result<ValidationReport> {
    let mut report = ValidationReport::new();
    let phi = &q.indexing;
    let classes = q.classes();
    for (c, members) in classes.iter().enumerate() {
        // Within a class, the one-step relation must connect everything.
        let mut uf = UnionFind::<usize>::new(members.len());
        for (i, &x) in members.iter().enumerate() {
            if !q.same_class(x, x)? {
                report.push("reflexive", [c as u32]);
            }
            for (j, &y) in members.iter().enumerate() {
                if q.same_class(x, y)? != q.same_class(y, x)? {
                    report.push("symmetric", [c as u32, i as u32, j as u32]);
                }
                if cp_equal(phi, x, y)?.is_some() {
                    uf.union(i, j);
                }
            }
        }
        let roots: FxHashSet<usize> = (0..members.len()).map(|i| uf.find_mut(i)).collect();
        if roots.len() > 1 {
            report.push("generated", [c as u32]);
        }
    }
    for s in all_triples(phi) {
        let bd = cp_boundary(phi, s)?;
        for t in q.double.with_boundary(&bd).iter().flat_map(|&k| classes[k.index()].iter().copied()) {
            if cp_equal(phi, s, t)?.is_some() && !q.same_class(s, t)? {
                report.push("contains_one_step", [q.square_of(s)?.0, q.square_of(t)?.0]);
            }
        }
    }
    // transitivity follows from class equality being a function into class ids; verify anyway
    for (c, members) in classes.iter().enumerate() {
        for &x in members {
            if q.square_of(x)? != SqId::from(c) {
                report.push("transitive", [c as u32]);
            }
        }
    }
    Ok(report)
}

/// The unique double functor ! : B ⋊_Φ B* → C with H*! the identity.
///
/// A triple class goes to `up ⊟ U_C(f) ⊟ down` computed on its representative.
pub fn evaluation_functor(q: &CrossedProduct, c: &FiniteDoubleCategory) -> Result<DoubleFunctorTable> {
    if decorated_horizontalization(c)? != q.indexing.base {
        return Err(CoreError::BaseMismatch);
    }
    let report = check_induces(c, &q.indexing)?;
    if !report.is_empty() {
        return Err(CoreError::NotInducing(report));
    }
    let globular = c.globular_squares();
    let squares = q
        .representatives
        .iter()
        .map(|&s| image_of(c, &globular, s))
        .collect::<Result<_>>()?;
    Ok(DoubleFunctorTable {
        vertical: FunctorTable::identity(c.vertical()),
        horizontal: ids(c.horizontal_cells().len()).collect(),
        squares,
    })
}

fn image_of(c: &FiniteDoubleCategory, globular: &[SqId], s: CpSquare) -> Result<SqId> {
    let paste = |top: SqId, bottom: SqId| {
        c.vcomp(top, bottom)
            .map_err(|e| CoreError::IllFormedComposite(format!("{top} ⊟ {bottom}: {e}")))
    };
    match s {
        CpSquare::Globular(t) => Ok(globular[t.index()]),
        CpSquare::Triple { down, frame, up } => {
            let upper = paste(globular[up.index()], c.unit_square(frame))?;
            paste(upper, globular[down.index()])
        }
    }
}

/// Law ids: `functor.*` (double functor laws), `horizontalization.identity` (square or morphism),
/// `full_on_gamma` (square of γC missed), `forced` (class, member position).
/// Squares of C outside the image are listed as a note.
pub fn check_eval_properties(
    bang: &DoubleFunctorTable,
    q: &CrossedProduct,
    c: &FiniteDoubleCategory,
) -> Result<ValidationReport> {
    let mut report = ValidationReport::new();
    report.absorb("functor", validate_double_functor(bang, &q.double, c));
    if !report.is_empty() {
        return Ok(report);
    }
    if bang.vertical != FunctorTable::identity(c.vertical()) {
        report.push("horizontalization.identity", []);
    }
    if bang.horizontal.iter().enumerate().any(|(i, h)| h.index() != i) {
        report.push("horizontalization.identity", []);
    }
    let globular = c.globular_squares();
    for (i, &g) in globular.iter().enumerate() {
        if bang.square(SqId::from(i)) != g {
            report.push("horizontalization.identity", [i as u32]);
        }
    }
    for (k, members) in q.classes().iter().enumerate() {
        for (j, &m) in members.iter().enumerate() {
            if image_of(c, &globular, m)? != bang.square(SqId::from(k)) {
                report.push("forced", [k as u32, j as u32]);
            }
        }
    }
    let image: FxHashSet<SqId> = bang.squares.iter().copied().collect();
    let gamma = globularly_generated_piece(c);
    for &s in &gamma.squares {
        if !image.contains(&s) {
            report.push("full_on_gamma", [s.0]);
        }
    }
    let outside = c.square_count() - image.len();
    if outside > 0 {
        report.note(format!("{outside} squares of the target are not in the image"));
    }
    Ok(report)
}

/// `None` if ! is injective on classes, otherwise the least pair of distinct classes with equal
/// image.
pub fn check_eval_injective(bang: &DoubleFunctorTable) -> Option<(SqId, SqId)> {
    let mut first: FxHashMap<SqId, SqId> = FxHashMap::default();
    let mut best: Option<(SqId, SqId)> = None;
    for (i, &img) in bang.squares.iter().enumerate() {
        let s = SqId::from(i);
        if let Some(&prev) = first.get(&img) {
            if best.map_or(true, |b| (prev, s) < b) {
                best = Some((prev, s));
            }
        } else {
            first.insert(img, s);
        }
    }
    best
}
