//! Relations between small finite sets, with functions as vertical morphisms.
//!
//! Objects are the sets `{0..k}` for the allowed sizes. A square with frames `f: x → a`,
//! `g: y → b`, top `R ⊆ x × y` and bottom `S ⊆ a × b` exists iff `(f(i), g(j)) ∈ S` whenever
//! `(i, j) ∈ R`, so there is at most one square per boundary and squares are their boundaries.

use rustc_hash::FxHashMap;

use crate::cat::{FiniteCategory, Morphism};
use crate::doublecat::{materialize, Boundary, DoubleCategory, FiniteDoubleCategory, HorCell};
use crate::error::{CoreError, Result};
use crate::ids::{HorId, MorId, ObjId};

/// Which functions are admitted as vertical morphisms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FrameClass {
    All,
    Injective,
    Surjective,
    Bijective,
}

impl FrameClass {
    pub fn admits(self, f: &[u8], target_size: usize) -> bool {
        let injective = {
            let mut seen = [false; 8];
            f.iter().all(|&v| !std::mem::replace(&mut seen[v as usize], true))
        };
        let surjective = (0..target_size as u8).all(|v| f.contains(&v));
        match self {
            FrameClass::All => true,
            FrameClass::Injective => injective,
            FrameClass::Surjective => surjective,
            FrameClass::Bijective => injective && surjective,
        }
    }
}

/// All functions between sets of the given sizes, as a category. Morphisms are ordered by
/// source, target, then lexicographically by their value lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionCategory {
    pub sizes: Vec<usize>,
    pub category: FiniteCategory,
    /// `functions[m][i]` is the image of `i`.
    pub functions: Vec<Vec<u8>>,
}

fn all_functions(m: usize, k: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..k as u8).map(move |v| {
                    let mut p = prefix.clone();
                    p.push(v);
                    p
                })
            })
            .collect();
    }
    out
}

impl FunctionCategory {
    pub fn new(sizes: &[usize], class: FrameClass) -> Result<Self> {
        if sizes.iter().any(|&s| s == 0 || s > 8) {
            return Err(CoreError::Range("set sizes must lie in 1..=8".into()));
        }
        let mut morphisms = Vec::new();
        let mut functions = Vec::new();
        for (x, &m) in sizes.iter().enumerate() {
            for (a, &k) in sizes.iter().enumerate() {
                for f in all_functions(m, k) {
                    if class.admits(&f, k) || (x == a && f.iter().enumerate().all(|(i, &v)| v as usize == i)) {
                        morphisms.push(Morphism { source: ObjId::from(x), target: ObjId::from(a) });
                        functions.push(f);
                    }
                }
            }
        }
        let index: FxHashMap<(ObjId, ObjId, Vec<u8>), MorId> = morphisms
            .iter()
            .zip(&functions)
            .enumerate()
            .map(|(i, (m, f))| ((m.source, m.target, f.clone()), MorId::from(i)))
            .collect();
        let identities = (0..sizes.len())
            .map(|x| index[&(ObjId::from(x), ObjId::from(x), (0..sizes[x] as u8).collect())])
            .collect();
        let category = FiniteCategory::from_rule(sizes.len(), morphisms.clone(), identities, |second, first| {
            let f = &functions[first.index()];
            let g = &functions[second.index()];
            let gf: Vec<u8> = f.iter().map(|&i| g[i as usize]).collect();
            index
                .get(&(morphisms[first.index()].source, morphisms[second.index()].target, gf))
                .copied()
        })?;
        Ok(Self {
            sizes: sizes.to_vec(),
            category,
            functions,
        })
    }

    pub fn function(&self, f: MorId) -> &[u8] {
        &self.functions[f.index()]
    }

    pub fn size(&self, a: ObjId) -> usize {
        self.sizes[a.index()]
    }

    pub fn is_injective(&self, f: MorId) -> bool {
        FrameClass::Injective.admits(self.function(f), self.size(self.category.target(f)))
    }

    pub fn is_surjective(&self, f: MorId) -> bool {
        FrameClass::Surjective.admits(self.function(f), self.size(self.category.target(f)))
    }
}

/// A relation `x → y` as a bit set; bit `i * |y| + j` holds `(i, j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Relation {
    pub source: ObjId,
    pub target: ObjId,
    pub bits: u64,
}

/// Rel over the given set sizes, without tabulating its squares.
#[derive(Debug, Clone)]
pub struct RelDoubleCategory {
    pub frames: FunctionCategory,
    relations: Vec<Relation>,
    relation_index: FxHashMap<Relation, HorId>,
    units: Vec<HorId>,
    by_source: Vec<Vec<MorId>>,
}

impl RelDoubleCategory {
    /// Sizes `1..=n` with all functions.
    pub fn up_to(n: usize) -> Result<Self> {
        Self::new(&(1..=n).collect::<Vec<_>>(), FrameClass::All)
    }

    pub fn new(sizes: &[usize], class: FrameClass) -> Result<Self> {
        let frames = FunctionCategory::new(sizes, class)?;
        if sizes.iter().any(|&a| a * a > 36) {
            return Err(CoreError::Range("relations are limited to 36 pairs".into()));
        }
        let mut relations = Vec::new();
        for x in 0..sizes.len() {
            for y in 0..sizes.len() {
                for bits in 0..(1u64 << (sizes[x] * sizes[y])) {
                    relations.push(Relation { source: ObjId::from(x), target: ObjId::from(y), bits });
                }
            }
        }
        let relation_index: FxHashMap<Relation, HorId> =
            relations.iter().enumerate().map(|(i, &r)| (r, HorId::from(i))).collect();
        let units = (0..sizes.len())
            .map(|x| {
                let k = sizes[x];
                let bits = (0..k).fold(0u64, |acc, i| acc | 1 << (i * k + i));
                relation_index[&Relation { source: ObjId::from(x), target: ObjId::from(x), bits }]
            })
            .collect();
        let mut by_target = vec![Vec::new(); sizes.len()];
        let mut by_source = vec![Vec::new(); sizes.len()];
        for f in frames.category.morphism_ids() {
            by_target[frames.category.target(f).index()].push(f);
            by_source[frames.category.source(f).index()].push(f);
        }
        Ok(Self {
            frames,
            relations,
            relation_index,
            units,
            by_source,
        })
    }

    pub fn relation(&self, h: HorId) -> Relation {
        self.relations[h.index()]
    }

    pub fn relation_id(&self, r: Relation) -> Option<HorId> {
        self.relation_index.get(&r).copied()
    }

    fn size(&self, a: ObjId) -> usize {
        self.frames.sizes[a.index()]
    }

    /// The pairs `(i, j)` of `x × y` with `(f(i), g(j)) ∈ s`.
    pub fn preimage(&self, f: MorId, g: MorId, s: Relation) -> u64 {
        let (ff, gg) = (self.frames.function(f), self.frames.function(g));
        let (bsize, ysize) = (self.size(s.target), gg.len());
        let mut bits = 0u64;
        for (i, &fi) in ff.iter().enumerate() {
            for (j, &gj) in gg.iter().enumerate() {
                if s.bits >> (fi as usize * bsize + gj as usize) & 1 == 1 {
                    bits |= 1 << (i * ysize + j);
                }
            }
        }
        bits
    }

    /// The pairs `(f(i), g(j))` for `(i, j) ∈ r`, inside `a × b`.
    pub fn image(&self, f: MorId, g: MorId, r: Relation) -> u64 {
        let (ff, gg) = (self.frames.function(f), self.frames.function(g));
        let bsize = self.size(self.frames.category.target(g));
        let ysize = gg.len();
        let mut bits = 0u64;
        for (i, &fi) in ff.iter().enumerate() {
            for (j, &gj) in gg.iter().enumerate() {
                if r.bits >> (i * ysize + j) & 1 == 1 {
                    bits |= 1 << (fi as usize * bsize + gj as usize);
                }
            }
        }
        bits
    }

    pub fn compose_relations(&self, r: Relation, s: Relation) -> Relation {
        let (x, y, z) = (self.size(r.source), self.size(r.target), self.size(s.target));
        let mut bits = 0u64;
        for i in 0..x {
            for j in 0..y {
                if r.bits >> (i * y + j) & 1 == 1 {
                    for k in 0..z {
                        if s.bits >> (j * z + k) & 1 == 1 {
                            bits |= 1 << (i * z + k);
                        }
                    }
                }
            }
        }
        Relation { source: r.source, target: s.target, bits }
    }

    pub fn holds(&self, b: &Boundary) -> bool {
        let v = &self.frames.category;
        let (top, bottom) = (self.relation(b.top), self.relation(b.bottom));
        v.source(b.left) == top.source
            && v.source(b.right) == top.target
            && v.target(b.left) == bottom.source
            && v.target(b.right) == bottom.target
            && top.bits & !self.preimage(b.left, b.right, bottom) == 0
    }

    /// Number of squares, without enumerating them.
    pub fn count_squares(&self) -> u128 {
        let v = &self.frames.category;
        let mut total = 0u128;
        for h in 0..self.relations.len() {
            let s = self.relations[h];
            for f in v.morphism_ids().filter(|&f| v.target(f) == s.source) {
                for g in v.morphism_ids().filter(|&g| v.target(g) == s.target) {
                    total += 1u128 << self.preimage(f, g, s).count_ones();
                }
            }
        }
        total
    }

    /// All squares, in increasing order.
    pub fn all_squares(&self) -> Vec<Boundary> {
        let mut out: Vec<Boundary> = (0..self.relations.len())
            .flat_map(|h| self.squares_with_bottom(HorId::from(h)))
            .collect();
        out.sort_unstable();
        out
    }

    /// Tabulates this double category if its squares and composable pairs fit in `budget`.
    pub fn materialize(&self, budget: u128) -> Result<FiniteDoubleCategory> {
        // every square pastes at least with a vertical identity below and a unit square beside it
        let count = self.count_squares() * 3;
        if count > budget {
            return Err(CoreError::BudgetExceeded {
                what: "relation squares and composable pairs".into(),
                needed: count,
                budget,
            });
        }
        Ok(materialize(self, self.all_squares(), budget)?.0)
    }
}

fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(mask);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 { None } else { Some((cur - 1) & mask) };
        Some(cur)
    })
}

impl DoubleCategory for RelDoubleCategory {
    type Square = Boundary;

    fn vertical(&self) -> &FiniteCategory {
        &self.frames.category
    }

    fn horizontal_cell_count(&self) -> usize {
        self.relations.len()
    }

    fn horizontal_cell(&self, h: HorId) -> HorCell {
        let r = self.relation(h);
        HorCell { source: r.source, target: r.target }
    }

    fn horizontal_unit(&self, a: ObjId) -> HorId {
        self.units[a.index()]
    }

    fn compose_horizontal(&self, left: HorId, right: HorId) -> Option<HorId> {
        let (r, s) = (self.relation(left), self.relation(right));
        if r.target != s.source {
            return None;
        }
        self.relation_id(self.compose_relations(r, s))
    }

    fn boundary(&self, s: Boundary) -> Boundary {
        s
    }

    fn vcomp(&self, top: Boundary, bottom: Boundary) -> Result<Boundary> {
        if top.bottom != bottom.top {
            return Err(CoreError::BoundaryMismatch(format!("{top:?} over {bottom:?}")));
        }
        let v = &self.frames.category;
        Ok(Boundary {
            left: v.compose(bottom.left, top.left)?,
            right: v.compose(bottom.right, top.right)?,
            top: top.top,
            bottom: bottom.bottom,
        })
    }

    fn hcomp(&self, left: Boundary, right: Boundary) -> Result<Boundary> {
        if left.right != right.left {
            return Err(CoreError::BoundaryMismatch(format!("{left:?} beside {right:?}")));
        }
        let missing = || CoreError::MissingEntry("relation composite".into());
        Ok(Boundary {
            left: left.left,
            right: right.right,
            top: self.compose_horizontal(left.top, right.top).ok_or_else(missing)?,
            bottom: self.compose_horizontal(left.bottom, right.bottom).ok_or_else(missing)?,
        })
    }

    fn unit_square(&self, f: MorId) -> Boundary {
        let v = &self.frames.category;
        Boundary {
            left: f,
            right: f,
            top: self.units[v.source(f).index()],
            bottom: self.units[v.target(f).index()],
        }
    }

    fn vertical_identity(&self, h: HorId) -> Boundary {
        let r = self.relation(h);
        let v = &self.frames.category;
        Boundary {
            left: v.identity(r.source),
            right: v.identity(r.target),
            top: h,
            bottom: h,
        }
    }

    fn squares_with_boundary(&self, b: &Boundary) -> Vec<Boundary> {
        if self.holds(b) {
            vec![*b]
        } else {
            Vec::new()
        }
    }

    fn squares_with_bottom(&self, h: HorId) -> Vec<Boundary> {
        let s = self.relation(h);
        let v = &self.frames.category;
        let mut out = Vec::new();
        for f in v.morphism_ids().filter(|&f| v.target(f) == s.source) {
            for g in v.morphism_ids().filter(|&g| v.target(g) == s.target) {
                let (x, y) = (v.source(f), v.source(g));
                for bits in submasks(self.preimage(f, g, s)) {
                    let top = self.relation_index[&Relation { source: x, target: y, bits }];
                    out.push(Boundary { left: f, right: g, top, bottom: h });
                }
            }
        }
        out.sort_unstable();
        out
    }

    fn squares_with_top(&self, h: HorId) -> Vec<Boundary> {
        let r = self.relation(h);
        let v = &self.frames.category;
        let mut out = Vec::new();
        for &f in &self.by_source[r.source.index()] {
            for &g in &self.by_source[r.target.index()] {
                let (a, b) = (v.target(f), v.target(g));
                let full = (1u64 << (self.size(a) * self.size(b))) - 1;
                let image = self.image(f, g, r);
                for extra in submasks(full & !image) {
                    let bottom = self.relation_index[&Relation { source: a, target: b, bits: image | extra }];
                    out.push(Boundary { left: f, right: g, top: h, bottom });
                }
            }
        }
        out.sort_unstable();
        out
    }
}

/// Rel over sizes `1..=n`, tabulated.
pub fn build_rel(n: usize, budget: u128) -> Result<FiniteDoubleCategory> {
    RelDoubleCategory::up_to(n)?.materialize(budget)
}

/// Rel over sizes `1..=n` with only bijections as vertical morphisms, tabulated.
pub fn build_rel_star(n: usize, budget: u128) -> Result<FiniteDoubleCategory> {
    RelDoubleCategory::new(&(1..=n).collect::<Vec<_>>(), FrameClass::Bijective)?.materialize(budget)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn function_counts() {
        let c = FunctionCategory::new(&[1, 2, 3], FrameClass::All).unwrap();
        assert_eq!(c.category.morphism_count(), 1 + 1 + 1 + 2 + 4 + 8 + 3 + 9 + 27);
        let b = FunctionCategory::new(&[1, 2, 3], FrameClass::Bijective).unwrap();
        assert_eq!(b.category.morphism_count(), 1 + 2 + 6);
    }

    #[test]
    fn counting_agrees_with_enumeration() {
        let r = RelDoubleCategory::up_to(2).unwrap();
        assert_eq!(r.count_squares(), r.all_squares().len() as u128);
        let top_total: usize = (0..r.horizontal_cell_count()).map(|h| r.squares_with_top(HorId::from(h)).len()).sum();
        assert_eq!(top_total as u128, r.count_squares());
    }
}
