//! Length one and injectivity of the evaluation functor, decided through [`DoubleCategory`]
//! alone, for structures too large to tabulate.
//!
//! Both closures below are seeded with every globular square. Globular squares are closed under
//! both pastings, so pairs of globular squares are never tried.

use std::collections::VecDeque;
use std::hash::Hash;

use rustc_hash::{FxHashMap, FxHashSet};
use serde::Serialize;

use crate::doublecat::DoubleCategory;
use crate::error::{CoreError, Result};
use crate::ids::{HorId, MorId, ObjId};
use crate::indexing::{induced_maps, Direction};

fn push<K: Eq + Hash, S>(map: &mut FxHashMap<K, Vec<S>>, k: K, s: S) {
    map.entry(k).or_default().push(s);
}

fn get<'a, K: Eq + Hash, S>(map: &'a FxHashMap<K, Vec<S>>, k: &K) -> &'a [S] {
    map.get(k).map_or(&[], |v| v.as_slice())
}

struct Generators<S> {
    globular: Vec<S>,
    by_top: FxHashMap<HorId, Vec<S>>,
    by_bottom: FxHashMap<HorId, Vec<S>>,
    /// Keyed by the target object of the top edge.
    by_target: FxHashMap<ObjId, Vec<S>>,
    /// Keyed by the source object of the top edge.
    by_source: FxHashMap<ObjId, Vec<S>>,
}

fn globular_squares<D: DoubleCategory>(d: &D) -> Generators<D::Square> {
    let mut g = Generators {
        globular: Vec::new(),
        by_top: FxHashMap::default(),
        by_bottom: FxHashMap::default(),
        by_target: FxHashMap::default(),
        by_source: FxHashMap::default(),
    };
    for h in d.horizontal_ids() {
        let cell = d.horizontal_cell(h);
        for s in d.squares_with_top(h) {
            if d.is_globular(s) {
                let b = d.boundary(s);
                g.globular.push(s);
                push(&mut g.by_top, b.top, s);
                push(&mut g.by_bottom, b.bottom, s);
                push(&mut g.by_target, cell.target, s);
                push(&mut g.by_source, cell.source, s);
            }
        }
    }
    g
}

struct Closure<'a, D: DoubleCategory> {
    d: &'a D,
    gens: &'a Generators<D::Square>,
    members: FxHashSet<D::Square>,
    other_by_top: FxHashMap<HorId, Vec<D::Square>>,
    other_by_bottom: FxHashMap<HorId, Vec<D::Square>>,
    other_by_left: FxHashMap<MorId, Vec<D::Square>>,
    other_by_right: FxHashMap<MorId, Vec<D::Square>>,
    queue: VecDeque<D::Square>,
    pastings: u128,
    budget: u128,
}

impl<'a, D: DoubleCategory> Closure<'a, D> {
    fn new(d: &'a D, gens: &'a Generators<D::Square>, budget: u128) -> Self {
        let mut cl = Self {
            d,
            gens,
            members: FxHashSet::default(),
            other_by_top: FxHashMap::default(),
            other_by_bottom: FxHashMap::default(),
            other_by_left: FxHashMap::default(),
            other_by_right: FxHashMap::default(),
            queue: VecDeque::new(),
            pastings: 0,
            budget,
        };
        for &s in &gens.globular {
            cl.add(s);
        }
        for f in d.vertical().morphism_ids() {
            cl.add(d.unit_square(f));
        }
        cl
    }

    fn add(&mut self, s: D::Square) {
        if !self.members.insert(s) {
            return;
        }
        if !self.d.is_globular(s) {
            let b = self.d.boundary(s);
            push(&mut self.other_by_top, b.top, s);
            push(&mut self.other_by_bottom, b.bottom, s);
            push(&mut self.other_by_left, b.left, s);
            push(&mut self.other_by_right, b.right, s);
        }
        self.queue.push_back(s);
    }

    fn charge(&mut self, n: usize) -> Result<()> {
        self.pastings += n as u128;
        if self.pastings > self.budget {
            return Err(CoreError::BudgetExceeded {
                what: "implicit closure pastings".into(),
                needed: self.pastings,
                budget: self.budget,
            });
        }
        Ok(())
    }

    fn close(&mut self, vertical: bool, horizontal: bool) -> Result<()> {
        let (d, gens) = (self.d, self.gens);
        let v = d.vertical();
        while let Some(s) = self.queue.pop_front() {
            let b = d.boundary(s);
            let plain = !d.is_globular(s);
            let mut found = Vec::new();
            if vertical {
                let mut above = get(&self.other_by_bottom, &b.top).to_vec();
                let mut below = get(&self.other_by_top, &b.bottom).to_vec();
                if plain {
                    above.extend_from_slice(get(&gens.by_bottom, &b.top));
                    below.extend_from_slice(get(&gens.by_top, &b.bottom));
                }
                self.charge(above.len() + below.len())?;
                for t in above {
                    found.push(d.vcomp(t, s)?);
                }
                for t in below {
                    found.push(d.vcomp(s, t)?);
                }
            }
            if horizontal {
                let mut left = get(&self.other_by_right, &b.left).to_vec();
                let mut right = get(&self.other_by_left, &b.right).to_vec();
                if plain && v.is_identity(b.left) {
                    left.extend_from_slice(get(&gens.by_target, &v.source(b.left)));
                }
                if plain && v.is_identity(b.right) {
                    right.extend_from_slice(get(&gens.by_source, &v.source(b.right)));
                }
                self.charge(left.len() + right.len())?;
                for t in left {
                    found.push(d.hcomp(t, s)?);
                }
                for t in right {
                    found.push(d.hcomp(s, t)?);
                }
            }
            for r in found {
                self.add(r);
            }
        }
        Ok(())
    }
}

/// Sizes of γC and of the vertical closure of the horizontal closure of its generators, with
/// the least square of γC missing from the latter.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ImplicitLengthOne<S> {
    pub holds: bool,
    pub witness: Option<S>,
    pub globular: usize,
    pub gamma: usize,
    pub closure: usize,
    pub pastings: u128,
}

/// ℓC = 1, decided without tabulating `d`. `budget` caps the number of pastings tried.
pub fn is_length_one_implicit<D: DoubleCategory>(d: &D, budget: u128) -> Result<ImplicitLengthOne<D::Square>> {
    let gens = globular_squares(d);
    let mut gamma = Closure::new(d, &gens, budget);
    gamma.close(true, true)?;
    let mut closure = Closure::new(d, &gens, budget);
    closure.close(false, true)?;
    closure.queue.extend(closure.members.iter().copied());
    closure.close(true, false)?;
    let witness = gamma.members.iter().copied().filter(|s| !closure.members.contains(s)).min();
    Ok(ImplicitLengthOne {
        holds: witness.is_none(),
        witness,
        globular: gens.globular.len(),
        gamma: gamma.members.len(),
        closure: closure.members.len(),
        pastings: gamma.pastings + closure.pastings,
    })
}

/// A triple `(down, frame, up)` of globular squares around a non-identity frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Triple<S> {
    pub down: S,
    pub frame: MorId,
    pub up: S,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ImplicitEvaluation<S> {
    pub triples: usize,
    pub classes: usize,
    /// Two triples over the same frame and upper square, in distinct classes, with equal
    /// evaluation; the least such pair.
    pub witness: Option<(Triple<S>, Triple<S>, S)>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn join(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
}

/// Classes of triples under the π₂-opindexing induced by `d`, and the evaluation
/// `up ⊟ U(frame) ⊟ down` on them, without tabulating `d` or its crossed product.
pub fn evaluation_injectivity_implicit<D: DoubleCategory>(
    d: &D,
    budget: u128,
) -> Result<ImplicitEvaluation<D::Square>> {
    let v = d.vertical();
    let (monoids, maps) = induced_maps(d, Direction::Opindexing)?;
    let gens = globular_squares(d);
    let mut triples = Vec::new();
    for f in v.morphism_ids().filter(|&f| !v.is_identity(f)) {
        let downs = get(&gens.by_top, &d.horizontal_unit(v.target(f)));
        let ups = get(&gens.by_bottom, &d.horizontal_unit(v.source(f)));
        let needed = triples.len() as u128 + (downs.len() * ups.len()) as u128;
        if needed > budget {
            return Err(CoreError::BudgetExceeded {
                what: "implicit triples".into(),
                needed,
                budget,
            });
        }
        for &down in downs {
            for &up in ups {
                triples.push(Triple { down, frame: f, up });
            }
        }
    }
    triples.sort_unstable();
    let index: FxHashMap<Triple<D::Square>, usize> = triples.iter().enumerate().map(|(i, &t)| (t, i)).collect();
    let mut uf = UnionFind((0..triples.len()).collect());
    for t in &triples {
        let at = v.target(t.frame);
        for (x, &nu) in monoids[at.index()].elements.iter().enumerate() {
            let moved = monoids[v.source(t.frame).index()].element(maps[t.frame.index()][x]);
            let other = Triple {
                down: d.vcomp(nu, t.down)?,
                frame: t.frame,
                up: t.up,
            };
            let shifted = Triple {
                down: t.down,
                frame: t.frame,
                up: d.vcomp(t.up, moved)?,
            };
            if let (Some(&j), Some(&k)) = (index.get(&other), index.get(&shifted)) {
                uf.join(j, k);
            }
        }
    }
    let mut seen: FxHashMap<(MorId, D::Square, D::Square), usize> = FxHashMap::default();
    let mut witness = None;
    for (i, t) in triples.iter().enumerate() {
        let image = d.vcomp(d.vcomp(t.up, d.unit_square(t.frame))?, t.down)?;
        match seen.get(&(t.frame, t.up, image)) {
            Some(&j) if uf.find(j) != uf.find(i) => {
                if witness.is_none() {
                    witness = Some((triples[j], *t, image));
                }
            }
            Some(_) => {}
            None => {
                seen.insert((t.frame, t.up, image), i);
            }
        }
    }
    let classes = (0..triples.len()).filter(|&i| uf.find(i) == i).count();
    Ok(ImplicitEvaluation {
        triples: triples.len(),
        classes,
        witness,
    })
}
