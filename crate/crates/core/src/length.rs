//! The globularly generated piece γC, the length-one test and canonical decompositions.

use std::collections::VecDeque;

use serde::Serialize;

use crate::doublecat::FiniteDoubleCategory;
use crate::ids::{MorId, SqId};

/// How a square entered a closure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Step {
    Globular,
    Unit(MorId),
    Vertical(SqId, SqId),
    Horizontal(SqId, SqId),
}

/// A set of squares closed under some pastings, with one replayable step per member. Every step
/// only refers to members found earlier in `order`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GammaPiece {
    /// Members in increasing order.
    pub squares: Vec<SqId>,
    /// Members in discovery order.
    pub order: Vec<SqId>,
    /// Indexed by square id; `None` for non-members.
    pub trace: Vec<Option<Step>>,
}

impl GammaPiece {
    pub fn contains(&self, s: SqId) -> bool {
        self.trace[s.index()].is_some()
    }

    pub fn len(&self) -> usize {
        self.squares.len()
    }

    pub fn is_empty(&self) -> bool {
        self.squares.is_empty()
    }
}

struct Closure<'a> {
    c: &'a FiniteDoubleCategory,
    trace: Vec<Option<Step>>,
    order: Vec<SqId>,
    queue: VecDeque<SqId>,
}

impl<'a> Closure<'a> {
    fn new(c: &'a FiniteDoubleCategory) -> Self {
        Self {
            c,
            trace: vec![None; c.square_count()],
            order: Vec::new(),
            queue: VecDeque::new(),
        }
    }

    fn add(&mut self, s: SqId, step: Step) {
        if self.trace[s.index()].is_none() {
            self.trace[s.index()] = Some(step);
            self.order.push(s);
            self.queue.push_back(s);
        }
    }

    fn seed_generators(&mut self) {
        let c = self.c;
        for s in c.square_ids() {
            if c.is_globular(s) {
                self.add(s, Step::Globular);
            }
        }
        for f in c.vertical().morphism_ids() {
            self.add(c.unit_square(f), Step::Unit(f));
        }
    }

    fn close(&mut self, vertical: bool, horizontal: bool) {
        let c = self.c;
        while let Some(s) = self.queue.pop_front() {
            let mut found = Vec::new();
            if vertical {
                found.extend(
                    c.vcomp_partners_below(s)
                        .filter(|&(t, _)| self.trace[t.index()].is_some())
                        .map(|(t, r)| (r, Step::Vertical(s, t))),
                );
                found.extend(
                    c.vcomp_partners_above(s)
                        .filter(|&(t, _)| self.trace[t.index()].is_some())
                        .map(|(t, r)| (r, Step::Vertical(t, s))),
                );
            }
            if horizontal {
                found.extend(
                    c.hcomp_partners_right(s)
                        .filter(|&(t, _)| self.trace[t.index()].is_some())
                        .map(|(t, r)| (r, Step::Horizontal(s, t))),
                );
                found.extend(
                    c.hcomp_partners_left(s)
                        .filter(|&(t, _)| self.trace[t.index()].is_some())
                        .map(|(t, r)| (r, Step::Horizontal(t, s))),
                );
            }
            for (r, step) in found {
                self.add(r, step);
            }
        }
    }

    fn finish(self) -> GammaPiece {
        let mut squares = self.order.clone();
        squares.sort_unstable();
        GammaPiece {
            squares,
            order: self.order,
            trace: self.trace,
        }
    }
}

/// γC: the least set of squares containing all globular and unit squares and closed under both
/// compositions.
pub fn globularly_generated_piece(c: &FiniteDoubleCategory) -> GammaPiece {
    let mut cl = Closure::new(c);
    cl.seed_generators();
    cl.close(true, true);
    cl.finish()
}

/// Checks that every step of `piece` recomposes to its square from earlier members.
pub fn replay(c: &FiniteDoubleCategory, piece: &GammaPiece) -> bool {
    let mut seen = vec![false; c.square_count()];
    for &s in &piece.order {
        let ok = match piece.trace[s.index()] {
            Some(Step::Globular) => c.is_globular(s),
            Some(Step::Unit(f)) => c.unit_square(f) == s,
            Some(Step::Vertical(x, y)) => seen[x.index()] && seen[y.index()] && c.vcomp_entry(x, y) == Some(s),
            Some(Step::Horizontal(x, y)) => seen[x.index()] && seen[y.index()] && c.hcomp_entry(x, y) == Some(s),
            None => false,
        };
        if !ok {
            return false;
        }
        seen[s.index()] = true;
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LengthOne {
    pub holds: bool,
    /// The least square of γC that is not a vertical composite of horizontal composites of
    /// globular and unit squares.
    pub witness: Option<SqId>,
    pub gamma: GammaPiece,
    /// Vertical closure of the horizontal closure of the generators.
    pub closure: GammaPiece,
}

/// ℓC = 1: every square of γC is a vertical composite of horizontal composites of globular and
/// unit squares.
pub fn is_length_one(c: &FiniteDoubleCategory) -> LengthOne {
    let gamma = globularly_generated_piece(c);
    let mut cl = Closure::new(c);
    cl.seed_generators();
    cl.close(false, true);
    cl.queue.extend(cl.order.iter().copied());
    cl.close(true, false);
    let closure = cl.finish();
    let witness = gamma.squares.iter().copied().find(|&s| !closure.contains(s));
    LengthOne {
        holds: witness.is_none(),
        witness,
        gamma,
        closure,
    }
}

/// A canonical decomposition `up ⊟ U(frame) ⊟ down` with `up` and `down` globular. When `frame`
/// is an identity the middle factor is dropped and the decomposition reads `up ⊟ down`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Decomposition {
    pub up: SqId,
    pub frame: MorId,
    pub down: SqId,
}

impl Decomposition {
    /// The square this decomposition pastes to.
    pub fn paste(&self, c: &FiniteDoubleCategory) -> Option<SqId> {
        if c.vertical().is_identity(self.frame) {
            c.vcomp_entry(self.up, self.down)
        } else {
            let upper = c.vcomp_entry(self.up, c.unit_square(self.frame))?;
            c.vcomp_entry(upper, self.down)
        }
    }
}

/// The least canonical decomposition of `s`, ordered by `(up, frame, down)`.
///
/// A globular square is canonical as itself: `(s, id, vertical identity)`.
pub fn canonical_decomposition(c: &FiniteDoubleCategory, s: SqId) -> Option<Decomposition> {
    let v = c.vertical();
    let b = c.boundary_of(s);
    if c.is_globular(s) {
        return Some(Decomposition {
            up: s,
            frame: v.identity(v.source(b.left)),
            down: c.vertical_identity(b.bottom),
        });
    }
    if b.left != b.right {
        return None;
    }
    let f = b.left;
    let u = c.unit_square(f);
    let ub = c.boundary_of(u);
    let mut best: Option<Decomposition> = None;
    for &up in c.with_top(b.top) {
        if !c.is_globular(up) || c.boundary_of(up).bottom != ub.top {
            continue;
        }
        let Some(upper) = c.vcomp_entry(up, u) else { continue };
        for &down in c.with_bottom(b.bottom) {
            if !c.is_globular(down) || c.boundary_of(down).top != ub.bottom {
                continue;
            }
            if c.vcomp_entry(upper, down) == Some(s) {
                let d = Decomposition { up, frame: f, down };
                if best.map_or(true, |x| d < x) {
                    best = Some(d);
                }
            }
        }
        if best.is_some() {
            break;
        }
    }
    best
}

/// The least square of γC without a canonical decomposition.
pub fn first_non_canonical(c: &FiniteDoubleCategory) -> Option<SqId> {
    globularly_generated_piece(c)
        .squares
        .into_iter()
        .find(|&s| canonical_decomposition(c, s).is_none())
}

pub fn all_squares_canonical(c: &FiniteDoubleCategory) -> bool {
    first_non_canonical(c).is_none()
}
