//! The double category of commuting squares in a category.

use crate::cat::FiniteCategory;
use crate::doublecat::{materialize, Boundary, DoubleCategory, FiniteDoubleCategory, HorCell};
use crate::error::{CoreError, Result};
use crate::ids::{HorId, MorId, ObjId};

/// ⊡C as an implicit double category: vertical and horizontal morphisms are both the morphisms of
/// `C` (horizontal 1-cell `h` is morphism `h`), and there is one square per commuting boundary.
#[derive(Debug, Clone)]
pub struct CommutingSquares {
    pub category: FiniteCategory,
}

impl CommutingSquares {
    pub fn new(category: FiniteCategory) -> Self {
        Self { category }
    }

    fn mor(h: HorId) -> MorId {
        MorId(h.0)
    }

    fn hor(f: MorId) -> HorId {
        HorId(f.0)
    }

    /// `right ∘ top = bottom ∘ left`.
    pub fn commutes(&self, b: &Boundary) -> bool {
        let c = &self.category;
        let (top, bottom) = (Self::mor(b.top), Self::mor(b.bottom));
        c.source(b.left) == c.source(top)
            && c.source(b.right) == c.target(top)
            && c.target(b.left) == c.source(bottom)
            && c.target(b.right) == c.target(bottom)
            && c.entry(b.right, top) == c.entry(bottom, b.left)
    }

    pub fn all_squares(&self) -> Vec<Boundary> {
        let c = &self.category;
        let mut out = Vec::new();
        for left in c.morphism_ids() {
            for right in c.morphism_ids() {
                for &top in c.hom(c.source(left), c.source(right)) {
                    for &bottom in c.hom(c.target(left), c.target(right)) {
                        let b = Boundary {
                            left,
                            right,
                            top: Self::hor(top),
                            bottom: Self::hor(bottom),
                        };
                        if self.commutes(&b) {
                            out.push(b);
                        }
                    }
                }
            }
        }
        out
    }
}

impl DoubleCategory for CommutingSquares {
    type Square = Boundary;

    fn vertical(&self) -> &FiniteCategory {
        &self.category
    }

    fn horizontal_cell_count(&self) -> usize {
        self.category.morphism_count()
    }

    fn horizontal_cell(&self, h: HorId) -> HorCell {
        let m = self.category.morphism(Self::mor(h));
        HorCell {
            source: m.source,
            target: m.target,
        }
    }

    fn horizontal_unit(&self, a: ObjId) -> HorId {
        Self::hor(self.category.identity(a))
    }

    fn compose_horizontal(&self, left: HorId, right: HorId) -> Option<HorId> {
        self.category.entry(Self::mor(right), Self::mor(left)).map(Self::hor)
    }

    fn boundary(&self, s: Boundary) -> Boundary {
        s
    }

    fn vcomp(&self, top: Boundary, bottom: Boundary) -> Result<Boundary> {
        if top.bottom != bottom.top {
            return Err(CoreError::BoundaryMismatch(format!("{top:?} over {bottom:?}")));
        }
        let c = &self.category;
        Ok(Boundary {
            left: c.compose(bottom.left, top.left)?,
            right: c.compose(bottom.right, top.right)?,
            top: top.top,
            bottom: bottom.bottom,
        })
    }

    fn hcomp(&self, left: Boundary, right: Boundary) -> Result<Boundary> {
        if left.right != right.left {
            return Err(CoreError::BoundaryMismatch(format!("{left:?} beside {right:?}")));
        }
        let c = &self.category;
        Ok(Boundary {
            left: left.left,
            right: right.right,
            top: Self::hor(c.compose(Self::mor(right.top), Self::mor(left.top))?),
            bottom: Self::hor(c.compose(Self::mor(right.bottom), Self::mor(left.bottom))?),
        })
    }

    fn unit_square(&self, f: MorId) -> Boundary {
        let c = &self.category;
        Boundary {
            left: f,
            right: f,
            top: Self::hor(c.identity(c.source(f))),
            bottom: Self::hor(c.identity(c.target(f))),
        }
    }

    fn vertical_identity(&self, h: HorId) -> Boundary {
        let c = &self.category;
        let m = c.morphism(Self::mor(h));
        Boundary {
            left: c.identity(m.source),
            right: c.identity(m.target),
            top: h,
            bottom: h,
        }
    }

    fn squares_with_boundary(&self, b: &Boundary) -> Vec<Boundary> {
        if self.commutes(b) {
            vec![*b]
        } else {
            Vec::new()
        }
    }

    fn squares_with_bottom(&self, h: HorId) -> Vec<Boundary> {
        let mut out: Vec<Boundary> = self.all_squares().into_iter().filter(|b| b.bottom == h).collect();
        out.sort_unstable();
        out
    }

    fn squares_with_top(&self, h: HorId) -> Vec<Boundary> {
        let mut out: Vec<Boundary> = self.all_squares().into_iter().filter(|b| b.top == h).collect();
        out.sort_unstable();
        out
    }
}

/// ⊡C, tabulated. Square ids follow the boundary order `(left, right, top, bottom)`.
pub fn build_commuting_squares(cat: &FiniteCategory) -> Result<FiniteDoubleCategory> {
    let d = CommutingSquares::new(cat.clone());
    Ok(materialize(&d, d.all_squares(), u128::MAX)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::doublecat::validate_double_category;

    #[test]
    fn point_has_one_square() {
        let c = build_commuting_squares(&FiniteCategory::discrete(1)).unwrap();
        assert_eq!(c.square_count(), 1);
        assert!(validate_double_category(&c).is_empty());
    }

    #[test]
    fn chain_and_group_are_valid() {
        for cat in [FiniteCategory::chain(2), FiniteCategory::cyclic_group(2)] {
            let c = build_commuting_squares(&cat).unwrap();
            assert!(validate_double_category(&c).is_empty());
        }
    }
}
