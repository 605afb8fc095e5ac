//! Spans between small finite sets.
//!
//! A span `x ← A → y` is stored up to isomorphism as its multiplicity matrix: entry `(i, j)` is
//! the number of apex points over `(i, j)`. The apex of a stored span is enumerated in row-major
//! order, copies consecutively. A square is an apex map commuting with the legs.
//!
//! Spans with a bounded apex are not closed under composition, so the horizontal 1-cells are the
//! closure of the small spans and units under composition and restriction along the admitted
//! frames, computed within the budget.

use std::collections::VecDeque;

use rustc_hash::FxHashMap;

use crate::doublecat::{Boundary, DoubleCategoryParts, FiniteDoubleCategory, HorCell};
use crate::error::{CoreError, Result};
use crate::ids::{HorId, MorId, ObjId, SqId};
use crate::instances::rel::{FrameClass, FunctionCategory};

/// A composite cell with the apex position of each pair of composed apex points.
type Pullback = (HorId, FxHashMap<(u32, u32), u32>);

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpanCell {
    pub source: ObjId,
    pub target: ObjId,
    /// Row-major multiplicities over `source × target`.
    pub mult: Vec<u32>,
}

impl SpanCell {
    pub fn apex_size(&self) -> u128 {
        self.mult.iter().map(|&m| u128::from(m)).sum()
    }

    /// `(i, j)` of every apex point, in apex order.
    fn legs(&self, cols: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (k, &m) in self.mult.iter().enumerate() {
            for _ in 0..m {
                out.push((k / cols, k % cols));
            }
        }
        out
    }

    /// Apex position of the first copy over each entry.
    fn offsets(&self) -> Vec<u32> {
        let mut acc = 0;
        self.mult
            .iter()
            .map(|&m| {
                let o = acc;
                acc += m;
                o
            })
            .collect()
    }
}

/// A tabulated finite piece of Span together with the data behind its ids.
#[derive(Debug, Clone)]
pub struct SpanDoubleCategory {
    pub frames: FunctionCategory,
    pub cells: Vec<SpanCell>,
    /// Apex map of each square.
    pub maps: Vec<Vec<u32>>,
    pub double: FiniteDoubleCategory,
}

struct Builder<'a> {
    frames: &'a FunctionCategory,
    spent: u128,
    budget: u128,
}

impl Builder<'_> {
    fn charge(&mut self, what: &str, n: u128) -> Result<()> {
        self.spent += n;
        if self.spent > self.budget {
            return Err(CoreError::BudgetExceeded {
                what: what.into(),
                needed: self.spent,
                budget: self.budget,
            });
        }
        Ok(())
    }

    fn size(&self, a: ObjId) -> usize {
        self.frames.sizes[a.index()]
    }

    fn compose(&self, l: &SpanCell, r: &SpanCell) -> SpanCell {
        let (x, y, z) = (self.size(l.source), self.size(l.target), self.size(r.target));
        let mut mult = vec![0u32; x * z];
        for i in 0..x {
            for j in 0..y {
                let a = l.mult[i * y + j];
                if a == 0 {
                    continue;
                }
                for k in 0..z {
                    mult[i * z + k] = mult[i * z + k].saturating_add(a.saturating_mul(r.mult[j * z + k]));
                }
            }
        }
        SpanCell { source: l.source, target: r.target, mult }
    }

    /// The pullback of `s` along `f × g`.
    fn restrict(&self, f: MorId, g: MorId, s: &SpanCell) -> SpanCell {
        let v = &self.frames.category;
        let (ff, gg) = (self.frames.function(f), self.frames.function(g));
        let b = self.size(s.target);
        let mut mult = Vec::with_capacity(ff.len() * gg.len());
        for &fi in ff {
            for &gj in gg {
                mult.push(s.mult[fi as usize * b + gj as usize]);
            }
        }
        SpanCell { source: v.source(f), target: v.source(g), mult }
    }

    fn unit(&self, a: ObjId) -> SpanCell {
        let k = self.size(a);
        SpanCell {
            source: a,
            target: a,
            mult: (0..k * k).map(|e| u32::from(e / k == e % k)).collect(),
        }
    }
}

fn matrices(entries: usize, total: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..entries {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<u32>| {
                let used: u32 = prefix.iter().sum();
                (0..=total - used).map(move |m| {
                    let mut p = prefix.clone();
                    p.push(m);
                    p
                })
            })
            .collect();
    }
    out
}

/// Spans over the given set sizes with frames of the given class. The 1-cells are generated by
/// all spans with apex at most `apex` and the unit spans.
pub fn build_span(sizes: &[usize], apex: u32, class: FrameClass, budget: u128) -> Result<SpanDoubleCategory> {
    let frames = FunctionCategory::new(sizes, class)?;
    let v = frames.category.clone();
    let mut b = Builder { frames: &frames, spent: 0, budget };
    let n = sizes.len();

    // 1-cells: closure under composition and restriction
    let mut cells: Vec<SpanCell> = Vec::new();
    let mut seen: FxHashMap<SpanCell, usize> = FxHashMap::default();
    let mut queue = VecDeque::new();
    let mut push = |c: SpanCell, cells: &mut Vec<SpanCell>, queue: &mut VecDeque<usize>| {
        if seen.contains_key(&c) {
            return false;
        }
        seen.insert(c.clone(), cells.len());
        queue.push_back(cells.len());
        cells.push(c);
        true
    };
    for x in 0..n {
        for y in 0..n {
            for mult in matrices(sizes[x] * sizes[y], apex) {
                push(SpanCell { source: ObjId::from(x), target: ObjId::from(y), mult }, &mut cells, &mut queue);
            }
        }
        let unit = b.unit(ObjId::from(x));
        push(unit, &mut cells, &mut queue);
    }
    while let Some(i) = queue.pop_front() {
        let mut fresh = Vec::new();
        let c = cells[i].clone();
        b.charge("span 1-cell closure", cells.len() as u128 * 2)?;
        for other in &cells {
            if c.target == other.source {
                fresh.push(b.compose(&c, other));
            }
            if other.target == c.source {
                fresh.push(b.compose(other, &c));
            }
        }
        for f in v.morphism_ids().filter(|&f| v.target(f) == c.source) {
            for g in v.morphism_ids().filter(|&g| v.target(g) == c.target) {
                fresh.push(b.restrict(f, g, &c));
            }
        }
        for cell in fresh {
            let apex = cell.apex_size();
            if push(cell, &mut cells, &mut queue) {
                b.charge("span 1-cell apex", apex)?;
            }
        }
    }
    cells.sort();
    let index: FxHashMap<SpanCell, HorId> = cells.iter().enumerate().map(|(i, c)| (c.clone(), HorId::from(i))).collect();
    let legs: Vec<Vec<(usize, usize)>> = cells.iter().map(|c| c.legs(sizes[c.target.index()])).collect();

    // squares
    let mut squares: Vec<Boundary> = Vec::new();
    let mut maps: Vec<Vec<u32>> = Vec::new();
    let mut by_bottom: Vec<Vec<usize>> = vec![Vec::new(); cells.len()];
    for (ti, top) in cells.iter().enumerate() {
        for f in v.morphism_ids().filter(|&f| v.source(f) == top.source) {
            for g in v.morphism_ids().filter(|&g| v.source(g) == top.target) {
                let (a, bb) = (v.target(f), v.target(g));
                let (ff, gg) = (frames.function(f), frames.function(g));
                for (bi, bottom) in cells.iter().enumerate() {
                    if bottom.source != a || bottom.target != bb {
                        continue;
                    }
                    let cols = sizes[bb.index()];
                    let offsets = bottom.offsets();
                    // choices for each apex point of the top span
                    let choices: Vec<(u32, u32)> = legs[ti]
                        .iter()
                        .map(|&(i, j)| {
                            let e = ff[i] as usize * cols + gg[j] as usize;
                            (offsets[e], bottom.mult[e])
                        })
                        .collect();
                    let count: u128 = choices.iter().map(|&(_, m)| m as u128).product();
                    b.charge("span squares", count)?;
                    for code in 0..count {
                        let mut rest = code;
                        let map = choices
                            .iter()
                            .map(|&(o, m)| {
                                let k = (rest % m as u128) as u32;
                                rest /= m as u128;
                                o + k
                            })
                            .collect();
                        by_bottom[bi].push(squares.len());
                        squares.push(Boundary { left: f, right: g, top: HorId::from(ti), bottom: HorId::from(bi) });
                        maps.push(map);
                    }
                }
            }
        }
    }
    let square_index: FxHashMap<(Boundary, &[u32]), SqId> = squares
        .iter()
        .zip(&maps)
        .enumerate()
        .map(|(i, (bd, m))| ((*bd, m.as_slice()), SqId::from(i)))
        .collect();
    let lookup = |bd: Boundary, m: &[u32]| -> Result<SqId> {
        square_index
            .get(&(bd, m))
            .copied()
            .ok_or_else(|| CoreError::IllFormedComposite(format!("span square {bd:?} {m:?}")))
    };

    let mut by_top: Vec<Vec<usize>> = vec![Vec::new(); cells.len()];
    let mut by_left: Vec<Vec<usize>> = vec![Vec::new(); v.morphism_count()];
    for (i, bd) in squares.iter().enumerate() {
        by_top[bd.top.index()].push(i);
        by_left[bd.left.index()].push(i);
    }
    let pairs: u128 = squares
        .iter()
        .map(|bd| (by_top[bd.bottom.index()].len() + by_left[bd.right.index()].len()) as u128)
        .sum();
    b.charge("span table entries", pairs)?;
    // canonical pullback positions: for composable (l, r), the composite apex position of each
    // pair of apex points, ordered within an entry by (middle, left copy, right copy)
    let mut pullbacks: FxHashMap<(usize, usize), Pullback> = FxHashMap::default();
    let mut pullback = |l: usize, r: usize| -> Result<Pullback> {
        if let Some(p) = pullbacks.get(&(l, r)) {
            return Ok(p.clone());
        }
        let composite = b.compose(&cells[l], &cells[r]);
        let id = *index
            .get(&composite)
            .ok_or_else(|| CoreError::IllFormedComposite("span composite outside the closure".into()))?;
        let z = sizes[composite.target.index()];
        let offsets = composite.offsets();
        let mut used = vec![0u32; composite.mult.len()];
        let mut pos = FxHashMap::default();
        let mut pairs: Vec<(usize, u32, u32, usize)> = Vec::new();
        for (p, &(i, j)) in legs[l].iter().enumerate() {
            for (q, &(j2, k)) in legs[r].iter().enumerate() {
                if j == j2 {
                    pairs.push((j, p as u32, q as u32, i * z + k));
                }
            }
        }
        pairs.sort_unstable();
        for (_, p, q, e) in pairs {
            pos.insert((p, q), offsets[e] + used[e]);
            used[e] += 1;
        }
        pullbacks.insert((l, r), (id, pos.clone()));
        Ok((id, pos))
    };

    let mut vcomp = Vec::new();
    let mut hcomp = Vec::new();
    for (s, bd) in squares.iter().enumerate() {
        for &t in &by_top[bd.bottom.index()] {
            let bt = squares[t];
            let map: Vec<u32> = maps[s].iter().map(|&p| maps[t][p as usize]).collect();
            let result = Boundary {
                left: v.compose(bt.left, bd.left)?,
                right: v.compose(bt.right, bd.right)?,
                top: bd.top,
                bottom: bt.bottom,
            };
            vcomp.push((SqId::from(s), SqId::from(t), lookup(result, &map)?));
        }
        for &t in &by_left[bd.right.index()] {
            let bt = squares[t];
            let (top, top_pos) = pullback(bd.top.index(), bt.top.index())?;
            let (bottom, bottom_pos) = pullback(bd.bottom.index(), bt.bottom.index())?;
            let mut map = vec![0u32; top_pos.len()];
            for (&(p, q), &k) in &top_pos {
                map[k as usize] = bottom_pos[&(maps[s][p as usize], maps[t][q as usize])];
            }
            let result = Boundary { left: bd.left, right: bt.right, top, bottom };
            hcomp.push((SqId::from(s), SqId::from(t), lookup(result, &map)?));
        }
    }
    let units: Vec<HorId> = (0..n).map(|x| index[&b.unit(ObjId::from(x))]).collect();
    let unit_squares = v
        .morphism_ids()
        .map(|f| {
            let bd = Boundary {
                left: f,
                right: f,
                top: units[v.source(f).index()],
                bottom: units[v.target(f).index()],
            };
            let map: Vec<u32> = frames.function(f).iter().map(|&y| y as u32).collect();
            lookup(bd, &map)
        })
        .collect::<Result<_>>()?;
    let vertical_identities = cells
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let bd = Boundary {
                left: v.identity(c.source),
                right: v.identity(c.target),
                top: HorId::from(i),
                bottom: HorId::from(i),
            };
            lookup(bd, &(0..c.apex_size() as u32).collect::<Vec<u32>>())
        })
        .collect::<Result<_>>()?;
    let mut horizontal_composition = Vec::new();
    for (l, cl) in cells.iter().enumerate() {
        for (r, cr) in cells.iter().enumerate() {
            if cl.target == cr.source {
                horizontal_composition.push((HorId::from(l), HorId::from(r), index[&b.compose(cl, cr)]));
            }
        }
    }
    let double = FiniteDoubleCategory::new(DoubleCategoryParts {
        vertical: v,
        horizontal_cells: cells.iter().map(|c| HorCell { source: c.source, target: c.target }).collect(),
        horizontal_units: units,
        horizontal_composition,
        squares,
        vcomp,
        hcomp,
        unit_squares,
        vertical_identities,
    })?;
    Ok(SpanDoubleCategory { frames, cells, maps, double })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::doublecat::validate_double_category;

    #[test]
    fn singleton_spans_are_tiny_and_valid() {
        let s = build_span(&[1], 1, FrameClass::All, 1_000_000).unwrap();
        assert_eq!(s.cells.len(), 2);
        assert!(validate_double_category(&s.double).is_empty());
    }

    #[test]
    fn apex_two_never_closes() {
        let err = build_span(&[1], 2, FrameClass::All, 100_000).unwrap_err();
        assert!(matches!(err, CoreError::BudgetExceeded { .. }));
    }
}
