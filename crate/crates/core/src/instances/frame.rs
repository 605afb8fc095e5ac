//! Frame products: a one-object category of frames beside a one-object 2-category of cells.
//!
//! A square is `(left, right, θ)` with `θ` a 2-cell from its top to its bottom 1-cell. Vertical
//! pasting composes frames and stacks 2-cells; horizontal pasting composes 2-cells side by side.

use serde::Serialize;

use crate::cat::{CommMonoidPresentation, FiniteCategory, FunctorTable};
use crate::doublecat::{materialize, Boundary, DoubleCategory, FiniteDoubleCategory, HorCell};
use crate::error::{CoreError, Result};
use crate::ids::{ids, HorId, MorId, ObjId, OneCellId, TwoCellId};
use crate::twocat::{FiniteTwoCategory, OneCell, TwoCategoryParts, TwoCell};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FrameSquare {
    pub left: MorId,
    pub right: MorId,
    pub cell: TwoCellId,
}

#[derive(Debug, Clone)]
pub struct FrameProduct {
    pub frames: FiniteCategory,
    pub cells: FiniteTwoCategory,
}

impl FrameProduct {
    pub fn new(frames: FiniteCategory, cells: FiniteTwoCategory) -> Result<Self> {
        if frames.object_count() != 1 || cells.object_count() != 1 {
            return Err(CoreError::Malformed("frame products need one-object inputs".into()));
        }
        Ok(Self { frames, cells })
    }

    fn hor(c: OneCellId) -> HorId {
        HorId(c.0)
    }

    fn one(h: HorId) -> OneCellId {
        OneCellId(h.0)
    }

    pub fn all_squares(&self) -> Vec<FrameSquare> {
        let mut out = Vec::new();
        for left in self.frames.morphism_ids() {
            for right in self.frames.morphism_ids() {
                for cell in self.cells.two_cell_ids() {
                    out.push(FrameSquare { left, right, cell });
                }
            }
        }
        out
    }

    pub fn tabulate(&self) -> Result<(FiniteDoubleCategory, Vec<FrameSquare>)> {
        materialize(self, self.all_squares(), u128::MAX)
    }

    fn with(&self, pick: impl Fn(&TwoCell) -> bool) -> Vec<FrameSquare> {
        self.all_squares()
            .into_iter()
            .filter(|s| pick(&self.cells.two_cell(s.cell)))
            .collect()
    }
}

impl DoubleCategory for FrameProduct {
    type Square = FrameSquare;

    fn vertical(&self) -> &FiniteCategory {
        &self.frames
    }

    fn horizontal_cell_count(&self) -> usize {
        self.cells.one_cell_count()
    }

    fn horizontal_cell(&self, h: HorId) -> HorCell {
        let c = self.cells.one_cell(Self::one(h));
        HorCell {
            source: c.source,
            target: c.target,
        }
    }

    fn horizontal_unit(&self, a: ObjId) -> HorId {
        Self::hor(self.cells.one_identity(a))
    }

    fn compose_horizontal(&self, left: HorId, right: HorId) -> Option<HorId> {
        self.cells.compose_one(Self::one(left), Self::one(right)).map(Self::hor)
    }

    fn boundary(&self, s: FrameSquare) -> Boundary {
        let t = self.cells.two_cell(s.cell);
        Boundary {
            left: s.left,
            right: s.right,
            top: Self::hor(t.source),
            bottom: Self::hor(t.target),
        }
    }

    fn vcomp(&self, top: FrameSquare, bottom: FrameSquare) -> Result<FrameSquare> {
        Ok(FrameSquare {
            left: self.frames.compose(bottom.left, top.left)?,
            right: self.frames.compose(bottom.right, top.right)?,
            cell: self.cells.vertical(top.cell, bottom.cell)?,
        })
    }

    fn hcomp(&self, left: FrameSquare, right: FrameSquare) -> Result<FrameSquare> {
        if left.right != right.left {
            return Err(CoreError::BoundaryMismatch(format!("{left:?} beside {right:?}")));
        }
        Ok(FrameSquare {
            left: left.left,
            right: right.right,
            cell: self.cells.horizontal(left.cell, right.cell)?,
        })
    }

    fn unit_square(&self, f: MorId) -> FrameSquare {
        let unit = self.cells.one_identity(ObjId(0));
        FrameSquare {
            left: f,
            right: f,
            cell: self.cells.two_identity(unit),
        }
    }

    fn vertical_identity(&self, h: HorId) -> FrameSquare {
        let id = self.frames.identity(ObjId(0));
        FrameSquare {
            left: id,
            right: id,
            cell: self.cells.two_identity(Self::one(h)),
        }
    }

    fn squares_with_boundary(&self, b: &Boundary) -> Vec<FrameSquare> {
        self.cells
            .two_cells_between(Self::one(b.top), Self::one(b.bottom))
            .iter()
            .map(|&cell| FrameSquare {
                left: b.left,
                right: b.right,
                cell,
            })
            .collect()
    }

    fn squares_with_bottom(&self, h: HorId) -> Vec<FrameSquare> {
        self.with(|t| t.target == Self::one(h))
    }

    fn squares_with_top(&self, h: HorId) -> Vec<FrameSquare> {
        self.with(|t| t.source == Self::one(h))
    }
}

/// One object, identity frames and edges, and the elements of `m` as squares.
pub fn build_monoid_bundle(m: &CommMonoidPresentation) -> Result<FiniteDoubleCategory> {
    let p = FrameProduct::new(FiniteCategory::discrete(1), FiniteTwoCategory::double_suspension(m))?;
    Ok(p.tabulate()?.0)
}

/// The frame product of the cyclic group Z/n with the double suspension of Z/n: a double
/// groupoid with π₂ = Z/n.
pub fn build_group_double_groupoid(n: usize) -> Result<FiniteDoubleCategory> {
    let p = FrameProduct::new(
        FiniteCategory::cyclic_group(n),
        FiniteTwoCategory::double_suspension(&CommMonoidPresentation::cyclic(n)),
    )?;
    Ok(p.tabulate()?.0)
}

/// All natural transformations `f ⇒ g` between endofunctors of `e`, as component lists.
pub fn natural_transformations(e: &FiniteCategory, f: &FunctorTable, g: &FunctorTable) -> Vec<Vec<MorId>> {
    let objects: Vec<ObjId> = e.objects().collect();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(objects.len());
    fn extend(
        e: &FiniteCategory,
        f: &FunctorTable,
        g: &FunctorTable,
        current: &mut Vec<MorId>,
        out: &mut Vec<Vec<MorId>>,
    ) {
        let x = current.len();
        if x == e.object_count() {
            out.push(current.clone());
            return;
        }
        let xo = ObjId::from(x);
        for &c in e.hom(f.object(xo), g.object(xo)) {
            current.push(c);
            let natural = e.morphism_ids().all(|m| {
                let (s, t) = (e.source(m).index(), e.target(m).index());
                if s > x || t > x {
                    return true;
                }
                e.entry(g.morphism(m), current[s]) == e.entry(current[t], f.morphism(m))
            });
            if natural {
                extend(e, f, g, current, out);
            }
            current.pop();
        }
    }
    extend(e, f, g, &mut current, &mut out);
    out
}

/// The one-object 2-category whose 1-cells are the given endofunctors of `e` and whose 2-cells
/// are all natural transformations between them. `functors` must contain the identity and be
/// closed under composition. 1-cell `left` then `right` composes to `right ∘ left`.
pub fn endofunctor_two_category(e: &FiniteCategory, functors: &[FunctorTable]) -> Result<FiniteTwoCategory> {
    let find = |f: &FunctorTable| {
        functors
            .iter()
            .position(|g| g == f)
            .map(OneCellId::from)
            .ok_or_else(|| CoreError::Malformed("endofunctors are not closed under composition".into()))
    };
    let unit = find(&FunctorTable::identity(e))?;
    let mut one_composition = Vec::new();
    for (i, f) in functors.iter().enumerate() {
        for (j, g) in functors.iter().enumerate() {
            one_composition.push((OneCellId::from(i), OneCellId::from(j), find(&g.after(f))?));
        }
    }
    let mut two_cells = Vec::new();
    let mut components: Vec<Vec<MorId>> = Vec::new();
    let mut two_identities = vec![TwoCellId(0); functors.len()];
    for (i, f) in functors.iter().enumerate() {
        for (j, g) in functors.iter().enumerate() {
            for c in natural_transformations(e, f, g) {
                if i == j && e.objects().all(|x| c[x.index()] == e.identity(f.object(x))) {
                    two_identities[i] = TwoCellId::from(two_cells.len());
                }
                two_cells.push(TwoCell {
                    source: OneCellId::from(i),
                    target: OneCellId::from(j),
                });
                components.push(c);
            }
        }
    }
    let cell_of = |c: &[MorId]| -> Result<TwoCellId> {
        components
            .iter()
            .position(|d| d.as_slice() == c)
            .map(TwoCellId::from)
            .ok_or_else(|| CoreError::IllFormedComposite("natural transformation".into()))
    };
    let mut vertical = Vec::new();
    let mut horizontal = Vec::new();
    for (a, ta) in two_cells.iter().enumerate() {
        for (b, tb) in two_cells.iter().enumerate() {
            let (ca, cb) = (&components[a], &components[b]);
            if ta.target == tb.source {
                let c: Vec<MorId> = e.objects().map(|x| e.compose(cb[x.index()], ca[x.index()])).collect::<Result<_>>()?;
                vertical.push((TwoCellId::from(a), TwoCellId::from(b), cell_of(&c)?));
            }
            // ta: F ⇒ F' on the left, tb: G ⇒ G' on the right, composite G∘F ⇒ G'∘F'
            let (g, f_after) = (&functors[tb.source.index()], &functors[ta.target.index()]);
            let c: Vec<MorId> = e
                .objects()
                .map(|x| e.compose(cb[f_after.object(x).index()], g.morphism(ca[x.index()])))
                .collect::<Result<_>>()?;
            horizontal.push((TwoCellId::from(a), TwoCellId::from(b), cell_of(&c)?));
        }
    }
    FiniteTwoCategory::new(TwoCategoryParts {
        object_count: 1,
        one_cells: vec![
            OneCell {
                source: ObjId(0),
                target: ObjId(0)
            };
            functors.len()
        ],
        one_identities: vec![unit],
        one_composition,
        two_cells,
        two_identities,
        vertical,
        horizontal,
    })
}

/// The category used by the non-injectivity witness: objects `s`, `T`, `t` with `s` initial, `T`
/// terminal, two arrows `u₀, u₁: T → t` and the two idempotents `uᵢ ∘ !` on `t`.
///
/// Morphism ids: 0, 1, 2 identities of s, T, t; 3 `s → T`; 4 `s → t`; 5 `t → T`; 6, 7 `u₀`, `u₁`;
/// 8, 9 `p₀ = u₀ ∘ !`, `p₁ = u₁ ∘ !`.
pub fn witness_base_category() -> FiniteCategory {
    use crate::cat::Morphism;
    let m = |s: usize, t: usize| Morphism {
        source: ObjId::from(s),
        target: ObjId::from(t),
    };
    let morphisms = vec![m(0, 0), m(1, 1), m(2, 2), m(0, 1), m(0, 2), m(2, 1), m(1, 2), m(1, 2), m(2, 2), m(2, 2)];
    let ends = morphisms.clone();
    FiniteCategory::from_rule(3, morphisms, ids(3).collect(), |second, first| {
        let (g, f) = (second.index(), first.index());
        if f < 3 {
            return Some(second);
        }
        if g < 3 {
            return Some(first);
        }
        let src = ends[f].source.index();
        let tgt = ends[g].target.index();
        Some(MorId::from(match (src, tgt) {
            (0, 1) => 3,
            (0, 2) => 4,
            (2, 1) => 5,
            (1, 1) => 1,
            // T → t: u_i ∘ ! ∘ u_j = u_i, p_i ∘ u_j = u_i
            (1, 2) => match g {
                8 => 6,
                9 => 7,
                _ => g,
            },
            // t → t: p_i ∘ p_j = p_i, u_i ∘ ! = p_i
            (2, 2) => match g {
                6 => 8,
                7 => 9,
                _ => g,
            },
            _ => return None,
        }))
    })
    .expect("witness base category")
}

/// The frame product of Z/2 with the 2-category of the endofunctors `Id`, `Δs`, `Δt` of
/// [`witness_base_category`] and all natural transformations between them. Its π₂ is trivial
/// while `!` from its crossed product identifies two triples.
pub fn build_witness_instance() -> Result<FiniteDoubleCategory> {
    let e = witness_base_category();
    let constant = |x: usize| FunctorTable {
        objects: vec![ObjId::from(x); 3],
        morphisms: vec![MorId::from(x); e.morphism_count()],
    };
    let functors = [FunctorTable::identity(&e), constant(0), constant(2)];
    let cells = endofunctor_two_category(&e, &functors)?;
    Ok(FrameProduct::new(FiniteCategory::cyclic_group(2), cells)?.tabulate()?.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::validate_category;
    use crate::doublecat::validate_double_category;
    use crate::pi2::pi2_monoid;
    use crate::twocat::validate_two_category;

    #[test]
    fn monoid_bundle_realizes_its_monoid() {
        let c = build_monoid_bundle(&CommMonoidPresentation::cyclic(4)).unwrap();
        assert!(validate_double_category(&c).is_empty());
        assert_eq!(pi2_monoid(&c, ObjId(0)).unwrap().size(), 4);
    }

    #[test]
    fn witness_instance_is_valid() {
        let e = witness_base_category();
        assert!(validate_category(&e).is_empty());
        let functors = [
            FunctorTable::identity(&e),
            FunctorTable {
                objects: vec![ObjId(0); 3],
                morphisms: vec![MorId(0); 10],
            },
        ];
        assert!(validate_two_category(&endofunctor_two_category(&e, &functors).unwrap()).is_empty());
        let c = build_witness_instance().unwrap();
        assert!(validate_double_category(&c).is_empty());
        assert!(pi2_monoid(&c, ObjId(0)).unwrap().is_trivial());
    }
}
