//! A strict 2-category seen as a double category with only unit horizontal 1-cells, and the
//! length-two example built from it.

use crate::cat::{FiniteCategory, Morphism};
use crate::doublecat::{materialize, Boundary, DoubleCategory, FiniteDoubleCategory, HorCell};
use crate::error::{CoreError, Result};
use crate::ids::{ids, HorId, MorId, ObjId, OneCellId, TwoCellId};
use crate::twocat::{FiniteTwoCategory, OneCell, TwoCategoryParts, TwoCell};

/// Vertical morphisms are the 1-cells of `b`, horizontal 1-cells are the units only, and the
/// squares with frames `f`, `g` are the 2-cells `f ⇒ g`. Vertical pasting is horizontal
/// composition in `b` and horizontal pasting is vertical composition in `b`.
#[derive(Debug, Clone)]
pub struct VerticalEmbedding {
    pub b: FiniteTwoCategory,
    vertical: FiniteCategory,
}

impl VerticalEmbedding {
    pub fn new(b: FiniteTwoCategory) -> Result<Self> {
        let morphisms = b
            .one_cells()
            .iter()
            .map(|c| Morphism {
                source: c.source,
                target: c.target,
            })
            .collect();
        let identities = b.one_identities().iter().map(|c| MorId(c.0)).collect();
        let entries: Vec<_> = b
            .one_composition_entries()
            .into_iter()
            .map(|(l, r, x)| (MorId(r.0), MorId(l.0), MorId(x.0)))
            .collect();
        let vertical = FiniteCategory::new(b.object_count(), morphisms, identities, entries)?;
        Ok(Self { b, vertical })
    }

    pub fn tabulate(&self) -> Result<(FiniteDoubleCategory, Vec<TwoCellId>)> {
        materialize(self, self.b.two_cell_ids().collect(), u128::MAX)
    }

    fn cells_where(&self, pick: impl Fn(TwoCell) -> bool) -> Vec<TwoCellId> {
        self.b.two_cell_ids().filter(|&t| pick(self.b.two_cell(t))).collect()
    }
}

impl DoubleCategory for VerticalEmbedding {
    type Square = TwoCellId;

    fn vertical(&self) -> &FiniteCategory {
        &self.vertical
    }

    fn horizontal_cell_count(&self) -> usize {
        self.b.object_count()
    }

    fn horizontal_cell(&self, h: HorId) -> HorCell {
        let a = ObjId(h.0);
        HorCell { source: a, target: a }
    }

    fn horizontal_unit(&self, a: ObjId) -> HorId {
        HorId(a.0)
    }

    fn compose_horizontal(&self, left: HorId, right: HorId) -> Option<HorId> {
        (left == right).then_some(left)
    }

    fn boundary(&self, s: TwoCellId) -> Boundary {
        let t = self.b.two_cell(s);
        let (a, b) = self.b.two_cell_endpoints(s);
        Boundary {
            left: MorId(t.source.0),
            right: MorId(t.target.0),
            top: HorId(a.0),
            bottom: HorId(b.0),
        }
    }

    fn vcomp(&self, top: TwoCellId, bottom: TwoCellId) -> Result<TwoCellId> {
        self.b.horizontal(top, bottom)
    }

    fn hcomp(&self, left: TwoCellId, right: TwoCellId) -> Result<TwoCellId> {
        self.b.vertical(left, right)
    }

    fn unit_square(&self, f: MorId) -> TwoCellId {
        self.b.two_identity(OneCellId(f.0))
    }

    fn vertical_identity(&self, h: HorId) -> TwoCellId {
        self.b.two_identity(self.b.one_identity(ObjId(h.0)))
    }

    fn squares_with_boundary(&self, bd: &Boundary) -> Vec<TwoCellId> {
        let (f, g) = (OneCellId(bd.left.0), OneCellId(bd.right.0));
        let ends = |c: OneCellId| {
            let c = self.b.one_cell(c);
            (HorId(c.source.0), HorId(c.target.0))
        };
        if ends(f) != (bd.top, bd.bottom) || ends(g) != (bd.top, bd.bottom) {
            return Vec::new();
        }
        self.b.two_cells_between(f, g).to_vec()
    }

    fn squares_with_bottom(&self, h: HorId) -> Vec<TwoCellId> {
        self.cells_where(|t| self.b.one_cell(t.source).target == ObjId(h.0))
    }

    fn squares_with_top(&self, h: HorId) -> Vec<TwoCellId> {
        self.cells_where(|t| self.b.one_cell(t.source).source == ObjId(h.0))
    }
}

/// The 2-category over the chain `a → b → c` with one 1-cell per pair and Z/2 worth of 2-cells on
/// every 1-cell except the identities of `a` and `c`; both compositions add.
///
/// 1-cell ids: 0, 1, 2 identities of a, b, c; 3 `f: a → b`; 4 `g: b → c`; 5 `fg: a → c`.
pub fn chain_with_z2_cells() -> FiniteTwoCategory {
    let ends = [(0, 0), (1, 1), (2, 2), (0, 1), (1, 2), (0, 2)];
    let compose = |l: usize, r: usize| -> Option<usize> {
        if ends[l].1 != ends[r].0 {
            return None;
        }
        let (s, t) = (ends[l].0, ends[r].1);
        ends.iter().position(|&e| e == (s, t))
    };
    let order = |c: usize| if c == 0 || c == 2 { 1 } else { 2 };
    let mut two_cells = Vec::new();
    let mut first = Vec::new();
    for c in 0..ends.len() {
        first.push(two_cells.len());
        for _ in 0..order(c) {
            two_cells.push(TwoCell {
                source: OneCellId::from(c),
                target: OneCellId::from(c),
            });
        }
    }
    let cell = |c: usize, v: usize| TwoCellId::from(first[c] + v % order(c));
    let mut vertical = Vec::new();
    let mut horizontal = Vec::new();
    let mut one_composition = Vec::new();
    for l in 0..ends.len() {
        for x in 0..order(l) {
            for y in 0..order(l) {
                vertical.push((cell(l, x), cell(l, y), cell(l, x + y)));
            }
        }
        for r in 0..ends.len() {
            let Some(lr) = compose(l, r) else { continue };
            for x in 0..order(l) {
                for y in 0..order(r) {
                    horizontal.push((cell(l, x), cell(r, y), cell(lr, x + y)));
                }
            }
        }
    }
    for l in 0..ends.len() {
        for r in 0..ends.len() {
            if let Some(lr) = compose(l, r) {
                one_composition.push((OneCellId::from(l), OneCellId::from(r), OneCellId::from(lr)));
            }
        }
    }
    FiniteTwoCategory::new(TwoCategoryParts {
        object_count: 3,
        one_cells: ends
            .iter()
            .map(|&(s, t)| OneCell {
                source: ObjId::from(s),
                target: ObjId::from(t),
            })
            .collect(),
        one_identities: ids(3).collect(),
        one_composition,
        two_cells,
        two_identities: (0..ends.len()).map(|c| cell(c, 0)).collect(),
        vertical,
        horizontal,
    })
    .expect("chain 2-category")
}

/// A double category in which `U(f) ⊟ ν ⊟ U(g)` lies in γC but has no canonical decomposition:
/// `ν` is the generator of π₂ at the middle object and π₂ is trivial at both ends.
pub fn build_length_two_example() -> Result<FiniteDoubleCategory> {
    Ok(VerticalEmbedding::new(chain_with_z2_cells())?.tabulate()?.0)
}

/// The square `U(f) ⊟ ν ⊟ U(g)` of [`build_length_two_example`].
pub fn length_two_square(c: &FiniteDoubleCategory) -> Result<crate::ids::SqId> {
    let nu = c
        .globular_squares()
        .into_iter()
        .find(|&s| {
            let b = c.boundary_of(s);
            b.top == HorId(1) && s != c.vertical_identity(HorId(1))
        })
        .ok_or_else(|| CoreError::Malformed("no non-trivial π₂ element at the middle object".into()))?;
    let upper = c.vcomp(c.unit_square(MorId(3)), nu)?;
    c.vcomp(upper, c.unit_square(MorId(4)))
}
