#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use dblcat::cat::CommMonoidPresentation;
use dblcat::crossprod::{all_triples, CpSquare};
use dblcat::doublecat::{Boundary, FiniteDoubleCategory};
use dblcat::ids::{MorId, SqId};
use dblcat::indexing::{Direction, Pi2Indexing};
use dblcat::instances::rel::FrameClass;
use dblcat::instances::spec::{build_instance, InstanceKind, InstanceSpec, NamedCategory, RestrictionKind};

pub const BUDGET: u128 = dblcat::DEFAULT_BUDGET;

pub fn spec(kind: InstanceKind) -> InstanceSpec {
    InstanceSpec::new(kind)
}

pub fn rel_star(n: usize) -> InstanceSpec {
    InstanceSpec::restricted(InstanceKind::Rel { n }, RestrictionKind::Star)
}

pub fn span_star(sizes: &[usize]) -> InstanceSpec {
    InstanceSpec::restricted(
        InstanceKind::Span {
            sizes: sizes.to_vec(),
            apex: 1,
            frames: FrameClass::All,
        },
        RestrictionKind::Star,
    )
}

pub fn build(s: &InstanceSpec) -> FiniteDoubleCategory {
    build_instance(s, BUDGET).unwrap_or_else(|e| panic!("{s:?}: {e}"))
}

/// Every desk-scale instance, by name.
pub fn suite() -> Vec<(&'static str, FiniteDoubleCategory)> {
    let specs = [
        ("box(2-path)", spec(InstanceKind::CommutingSquares { category: NamedCategory::Chain { length: 2 } })),
        ("box(Z/2)", spec(InstanceKind::CommutingSquares { category: NamedCategory::Cyclic { order: 2 } })),
        ("bundle(Z/2)", spec(InstanceKind::MonoidBundle { monoid: CommMonoidPresentation::cyclic(2) })),
        ("bundle(Z/4)", spec(InstanceKind::MonoidBundle { monoid: CommMonoidPresentation::cyclic(4) })),
        ("groupoid(Z/2)", spec(InstanceKind::GroupDoubleGroupoid { order: 2 })),
        ("groupoid(Z/3)", spec(InstanceKind::GroupDoubleGroupoid { order: 3 })),
        ("rel*(2)", rel_star(2)),
        ("span*(1,2)", span_star(&[1, 2])),
        ("frame-witness", spec(InstanceKind::FrameWitness)),
        ("length-two", spec(InstanceKind::LengthTwo)),
    ];
    specs.into_iter().map(|(n, s)| (n, build(&s))).collect()
}

/// Suite instances that induce an opindexing.
pub fn inducing_suite() -> Vec<(&'static str, FiniteDoubleCategory, Pi2Indexing)> {
    suite()
        .into_iter()
        .filter_map(|(n, c)| dblcat::indexing::induce_opindexing(&c).ok().map(|phi| (n, c, phi)))
        .collect()
}

/// Hand-rolled union-find over `0..n`.
pub struct Classes {
    parent: Vec<usize>,
}

impl Classes {
    pub fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn join(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.parent[a.max(b)] = a.min(b);
        }
    }

    pub fn count(&mut self) -> usize {
        (0..self.parent.len()).filter(|&x| self.find(x) == x).count()
    }
}

/// ν-orbits of triples computed directly from B's tables, by trying every ν on every pair.
pub fn orbit_oracle(phi: &Pi2Indexing) -> (Vec<CpSquare>, Classes) {
    let b = &phi.base.b;
    let triples = all_triples(phi);
    let index: BTreeMap<CpSquare, usize> = triples.iter().enumerate().map(|(i, &t)| (t, i)).collect();
    let mut classes = Classes::new(triples.len());
    for (i, &s) in triples.iter().enumerate() {
        let CpSquare::Triple { down: sd, frame: f, up: su } = s else { unreachable!() };
        let at = phi.domain_object(f);
        for &nu in &phi.monoids[at.index()].elements {
            let moved = phi.apply_cell(f, nu).unwrap();
            // one step: (ν ⊟ d, f, u) ~ (d, f, u ⊟ Φ_f ν) for opindexings,
            // (d, f, u ⊟ ν) ~ (Φ_f ν ⊟ d, f, u) for indexings
            let other: Vec<CpSquare> = match phi.direction {
                Direction::Opindexing => {
                    let Ok(u) = b.vertical(su, moved) else { continue };
                    b.two_cell_ids()
                        .filter(|&d| b.vertical(nu, d).ok() == Some(sd))
                        .map(|d| CpSquare::Triple { down: d, frame: f, up: u })
                        .collect()
                }
                Direction::Indexing => {
                    let Ok(d) = b.vertical(moved, sd) else { continue };
                    b.two_cell_ids()
                        .filter(|&u| b.vertical(u, nu).ok() == Some(su))
                        .map(|u| CpSquare::Triple { down: d, frame: f, up: u })
                        .collect()
                }
            };
            for t in other {
                if let Some(&j) = index.get(&t) {
                    classes.join(i, j);
                }
            }
        }
    }
    (triples, classes)
}

/// The least sub-double category containing globular and unit squares, by naive fixpoint.
pub fn gamma_oracle(c: &FiniteDoubleCategory) -> BTreeSet<SqId> {
    let mut set: BTreeSet<SqId> = c
        .square_ids()
        .filter(|&s| {
            let b = c.boundary_of(s);
            c.vertical().is_identity(b.left) && c.vertical().is_identity(b.right)
        })
        .collect();
    set.extend(c.unit_squares().iter().copied());
    loop {
        let mut next = set.clone();
        for (x, y, r) in c.vcomp_entries().into_iter().chain(c.hcomp_entries()) {
            if set.contains(&x) && set.contains(&y) {
                next.insert(r);
            }
        }
        if next.len() == set.len() {
            return set;
        }
        set = next;
    }
}

/// Cartesian (`above`) or opcartesian test by scanning every square and every frame pair.
pub fn factor_oracle(c: &FiniteDoubleCategory, s: SqId, above: bool) -> bool {
    let v = c.vertical();
    let sb = c.boundary_of(s);
    for outer in c.square_ids() {
        let ob = c.boundary_of(outer);
        if (above && ob.bottom != sb.bottom) || (!above && ob.top != sb.top) {
            continue;
        }
        for h in v.morphism_ids() {
            for k in v.morphism_ids() {
                let fits = if above {
                    v.entry(sb.left, h) == Some(ob.left) && v.entry(sb.right, k) == Some(ob.right)
                } else {
                    v.entry(h, sb.left) == Some(ob.left) && v.entry(k, sb.right) == Some(ob.right)
                };
                if !fits {
                    continue;
                }
                let count = c
                    .square_ids()
                    .filter(|&t| {
                        let tb = c.boundary_of(t);
                        if tb.left != h || tb.right != k {
                            return false;
                        }
                        let pasted = if above { c.vcomp_entry(t, s) } else { c.vcomp_entry(s, t) };
                        pasted == Some(outer)
                    })
                    .count();
                if count != 1 {
                    return false;
                }
            }
        }
    }
    true
}

pub fn boundary(left: MorId, right: MorId, top: u32, bottom: u32) -> Boundary {
    Boundary {
        left,
        right,
        top: dblcat::ids::HorId(top),
        bottom: dblcat::ids::HorId(bottom),
    }
}
