//! The commutative monoids π₂ of squares (or 2-cells) whose four edges are identities at one
//! object.

use rustc_hash::FxHashMap;

use crate::cat::{validate_monoid, CommMonoidPresentation};
use crate::doublecat::{Boundary, DoubleCategory};
use crate::error::{CoreError, Result};
use crate::ids::{ElemId, ObjId, TwoCellId};
use crate::report::ValidationReport;
use crate::twocat::FiniteTwoCategory;

/// π₂ at `object`. Element `e` is `elements[e]`; elements are numbered in increasing square
/// order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pi2Monoid<I> {
    pub object: ObjId,
    pub presentation: CommMonoidPresentation,
    pub elements: Vec<I>,
}

impl<I: Copy + Eq + std::hash::Hash> Pi2Monoid<I> {
    pub fn element(&self, e: ElemId) -> I {
        self.elements[e.index()]
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    /// Inverse of the element embedding.
    pub fn index(&self) -> FxHashMap<I, ElemId> {
        self.elements.iter().enumerate().map(|(i, &s)| (s, ElemId::from(i))).collect()
    }

    pub fn position(&self, s: I) -> Option<ElemId> {
        self.elements.iter().position(|&t| t == s).map(ElemId::from)
    }
}

fn build<I: Copy + Eq + std::hash::Hash + std::fmt::Debug>(
    object: ObjId,
    elements: Vec<I>,
    unit: I,
    vertical: impl Fn(I, I) -> Result<I>,
    horizontal: impl Fn(I, I) -> Result<I>,
) -> Result<Pi2Monoid<I>> {
    let index: FxHashMap<I, ElemId> = elements.iter().enumerate().map(|(i, &s)| (s, ElemId::from(i))).collect();
    let find = |s: I| {
        index
            .get(&s)
            .copied()
            .ok_or_else(|| CoreError::Malformed(format!("π₂ at {object} is not closed: composite {s:?}")))
    };
    let unit = find(unit)?;
    let n = elements.len();
    let mut table = Vec::with_capacity(n * n);
    for &x in &elements {
        for &y in &elements {
            let v = vertical(x, y)?;
            let h = horizontal(x, y)?;
            if v != h {
                return Err(CoreError::EckmannHilton {
                    object,
                    detail: format!("{x:?} ⊟ {y:?} = {v:?} but {x:?} □ {y:?} = {h:?}"),
                });
            }
            table.push(find(v)?);
        }
    }
    let presentation = CommMonoidPresentation::new(n, unit, table)?;
    let report = validate_monoid(&presentation);
    if let Some(v) = report.violations.first() {
        return Err(CoreError::EckmannHilton {
            object,
            detail: v.to_string(),
        });
    }
    Ok(Pi2Monoid {
        object,
        presentation,
        elements,
    })
}

fn pi2_boundary<D: DoubleCategory>(d: &D, a: ObjId) -> Boundary {
    let id = d.vertical().identity(a);
    let u = d.horizontal_unit(a);
    Boundary {
        left: id,
        right: id,
        top: u,
        bottom: u,
    }
}

/// Squares with identity frames and unit edges at `a`, in increasing order.
pub fn pi2_squares<D: DoubleCategory>(d: &D, a: ObjId) -> Vec<D::Square> {
    d.squares_with_boundary(&pi2_boundary(d, a))
}

/// π₂(C, a) with its operation read off vcomp; fails with `EckmannHilton` if hcomp disagrees or
/// the result is not a commutative monoid.
pub fn pi2_monoid<D: DoubleCategory>(d: &D, a: ObjId) -> Result<Pi2Monoid<D::Square>> {
    let unit = d.unit_square(d.vertical().identity(a));
    build(a, pi2_squares(d, a), unit, |x, y| d.vcomp(x, y), |x, y| d.hcomp(x, y))
}

/// All π₂ monoids, one per object.
pub fn pi2_monoids<D: DoubleCategory>(d: &D) -> Result<Vec<Pi2Monoid<D::Square>>> {
    d.vertical().objects().map(|a| pi2_monoid(d, a)).collect()
}

/// π₂(B, a): the 2-cells from the identity 1-cell at `a` to itself.
pub fn two_cell_pi2(b: &FiniteTwoCategory, a: ObjId) -> Result<Pi2Monoid<TwoCellId>> {
    let id = b.one_identity(a);
    let elements = b.two_cells_between(id, id).to_vec();
    build(a, elements, b.two_identity(id), |x, y| b.vertical(x, y), |x, y| b.horizontal(x, y))
}

pub fn two_cell_pi2_monoids(b: &FiniteTwoCategory) -> Result<Vec<Pi2Monoid<TwoCellId>>> {
    b.objects().map(|a| two_cell_pi2(b, a)).collect()
}

/// Empty iff for all x, y in π₂(C, a): x ⊟ y = x □ y = y ⊟ x.
///
/// Law ids: `vcomp_hcomp` (witness x, y), `commutativity` (witness x, y), `missing` (x, y).
/// Witnesses are element positions in increasing square order.
pub fn eckmann_hilton_check<D: DoubleCategory>(d: &D, a: ObjId) -> ValidationReport {
    let mut report = ValidationReport::new();
    let squares = pi2_squares(d, a);
    for (i, &x) in squares.iter().enumerate() {
        for (j, &y) in squares.iter().enumerate() {
            let (i, j) = (i as u32, j as u32);
            match (d.vcomp(x, y), d.hcomp(x, y), d.vcomp(y, x)) {
                (Ok(v), Ok(h), Ok(w)) => {
                    if v != h {
                        report.push("vcomp_hcomp", [i, j]);
                    }
                    if v != w {
                        report.push("commutativity", [i, j]);
                    }
                }
                _ => report.push("missing", [i, j]),
            }
        }
    }
    report
}
