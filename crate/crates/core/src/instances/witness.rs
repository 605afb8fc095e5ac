//! Search for two crossed-product squares that the evaluation functor identifies.

use serde::Serialize;

use crate::crossprod::{all_triples, build_crossed_product, evaluation_functor, CpSquare, CrossedProduct};
use crate::doublecat::{DoubleFunctorTable, FiniteDoubleCategory};
use crate::error::Result;
use crate::ids::{MorId, SqId, TwoCellId};
use crate::indexing::induce_opindexing;

/// Two triples over the same frame and the same upper cell, in distinct classes, sent to the same
/// square.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NoninjectivityWitness {
    pub first: CpSquare,
    pub second: CpSquare,
    pub first_class: SqId,
    pub second_class: SqId,
    pub image: SqId,
}

/// The crossed product, its evaluation functor and the least witness, if any.
#[derive(Debug, Clone)]
pub struct NoninjectivitySearch {
    pub crossed: CrossedProduct,
    pub bang: DoubleFunctorTable,
    pub witness: Option<NoninjectivityWitness>,
}

/// The least witness, scanning triples in `(down, frame, up)` order.
pub fn search_witness(q: &CrossedProduct, bang: &DoubleFunctorTable) -> Result<Option<NoninjectivityWitness>> {
    let mut seen: rustc_hash::FxHashMap<(MorId, TwoCellId, SqId), (CpSquare, SqId)> = Default::default();
    let mut best: Option<NoninjectivityWitness> = None;
    for t in all_triples(&q.indexing) {
        let CpSquare::Triple { frame, up, .. } = t else { continue };
        let class = q.square_of(t)?;
        let image = bang.squares[class.index()];
        match seen.get(&(frame, up, image)) {
            Some(&(first, first_class)) if first_class != class => {
                let w = NoninjectivityWitness {
                    first,
                    second: t,
                    first_class,
                    second_class: class,
                    image,
                };
                if best.map_or(true, |b| (w.first_class, w.second_class) < (b.first_class, b.second_class)) {
                    best = Some(w);
                }
            }
            Some(_) => {}
            None => {
                seen.insert((frame, up, image), (t, class));
            }
        }
    }
    Ok(best)
}

/// Builds the crossed product of the induced opindexing of `c` and its evaluation functor, then
/// searches for a witness.
pub fn noninjectivity_search(c: &FiniteDoubleCategory, budget: u128) -> Result<NoninjectivitySearch> {
    let phi = induce_opindexing(c)?;
    let crossed = build_crossed_product(&phi, budget)?;
    let bang = evaluation_functor(&crossed, c)?;
    let witness = search_witness(&crossed, &bang)?;
    Ok(NoninjectivitySearch { crossed, bang, witness })
}

pub fn find_noninjectivity_witness(c: &FiniteDoubleCategory, budget: u128) -> Result<Option<NoninjectivityWitness>> {
    Ok(noninjectivity_search(c, budget)?.witness)
}

/// Recomputes classes and images: the two triples are in distinct classes, share frame and upper
/// cell, and have equal image.
pub fn replay_witness(q: &CrossedProduct, bang: &DoubleFunctorTable, w: &NoninjectivityWitness) -> Result<bool> {
    let (CpSquare::Triple { frame: f1, up: u1, .. }, CpSquare::Triple { frame: f2, up: u2, .. }) = (w.first, w.second) else {
        return Ok(false);
    };
    let (a, b) = (q.square_of(w.first)?, q.square_of(w.second)?);
    Ok(f1 == f2
        && u1 == u2
        && a == w.first_class
        && b == w.second_class
        && a != b
        && bang.squares[a.index()] == w.image
        && bang.squares[b.index()] == w.image)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::frame::{build_group_double_groupoid, build_witness_instance};

    #[test]
    fn frame_witness_exists_and_groupoid_has_none() {
        let c = build_witness_instance().unwrap();
        let s = noninjectivity_search(&c, 10_000_000).unwrap();
        let w = s.witness.expect("witness");
        assert!(replay_witness(&s.crossed, &s.bang, &w).unwrap());
        let g = build_group_double_groupoid(2).unwrap();
        assert_eq!(find_noninjectivity_witness(&g, 10_000_000).unwrap(), None);
    }
}
