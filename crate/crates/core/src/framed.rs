//! Cartesian and opcartesian squares, framed bicategories and the restrictions C*, C̃ and Ĉ.
//!
//! A square `s` with frames `f`, `g` is cartesian if for every square Φ with the bottom edge of
//! `s` and every pair `(h, k)` with `f∘h = L(Φ)` and `g∘k = R(Φ)` there is exactly one Ψ with
//! frames `h`, `k` and `Ψ ⊟ s = Φ`. Opcartesian is the dual with squares pasted below.

use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::doublecat::{restrict_frames, CoNiche, DoubleCategory, DoubleFunctorTable, FiniteDoubleCategory, Niche, Restriction};
use crate::error::{CoreError, Result};
use crate::ids::MorId;
use crate::report::ValidationReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Factor<S> {
    pub outer: S,
    pub h: MorId,
    pub k: MorId,
    pub factor: S,
}

/// An outer square and frame pair with no factor or more than one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FactorFailure<S> {
    pub outer: S,
    pub h: MorId,
    pub k: MorId,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CartesianCertificate<S> {
    pub square: S,
    /// Whether the factors sit above (cartesian) or below (opcartesian) `square`.
    pub above: bool,
    pub factors: Vec<Factor<S>>,
    pub counterexample: Option<FactorFailure<S>>,
}

impl<S: Copy + Eq> CartesianCertificate<S> {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }

    /// Every stored factor pastes with the tested square to its outer square.
    pub fn replays<D: DoubleCategory<Square = S>>(&self, d: &D) -> bool {
        self.factors.iter().all(|fa| {
            let pasted = if self.above {
                d.vcomp(fa.factor, self.square)
            } else {
                d.vcomp(self.square, fa.factor)
            };
            let b = d.boundary(fa.factor);
            pasted.ok() == Some(fa.outer) && b.left == fa.h && b.right == fa.k
        })
    }
}

/// Exhaustive factorization search through `s` from above.
pub fn is_cartesian<D: DoubleCategory>(d: &D, s: D::Square) -> CartesianCertificate<D::Square> {
    factor_search(d, s, true, true)
}

/// Exhaustive factorization search through `s` from below.
pub fn is_opcartesian<D: DoubleCategory>(d: &D, s: D::Square) -> CartesianCertificate<D::Square> {
    factor_search(d, s, false, true)
}

fn factor_search<D: DoubleCategory>(d: &D, s: D::Square, above: bool, keep: bool) -> CartesianCertificate<D::Square> {
    let sb = d.boundary(s);
    let outers = if above {
        d.squares_with_bottom(sb.bottom)
    } else {
        d.squares_with_top(sb.top)
    };
    factor_search_among(d, s, above, keep, &outers)
}

/// `outers` are all squares sharing the bottom (above) or top (below) edge of `s`.
fn factor_search_among<D: DoubleCategory>(
    d: &D,
    s: D::Square,
    above: bool,
    keep: bool,
    outers: &[D::Square],
) -> CartesianCertificate<D::Square> {
    let v = d.vertical();
    let sb = d.boundary(s);
    let (f, g) = (sb.left, sb.right);
    let mut factors = Vec::new();
    for &outer in outers {
        let ob = d.boundary(outer);
        // frames h, k with f∘h = L(outer), g∘k = R(outer) (above) or h∘f, k∘g (below)
        let (hs, ks): (Vec<MorId>, Vec<MorId>) = if above {
            (
                v.hom(v.source(ob.left), v.source(f))
                    .iter()
                    .copied()
                    .filter(|&h| v.entry(f, h) == Some(ob.left))
                    .collect(),
                v.hom(v.source(ob.right), v.source(g))
                    .iter()
                    .copied()
                    .filter(|&k| v.entry(g, k) == Some(ob.right))
                    .collect(),
            )
        } else {
            (
                v.hom(v.target(f), v.target(ob.left))
                    .iter()
                    .copied()
                    .filter(|&h| v.entry(h, f) == Some(ob.left))
                    .collect(),
                v.hom(v.target(g), v.target(ob.right))
                    .iter()
                    .copied()
                    .filter(|&k| v.entry(k, g) == Some(ob.right))
                    .collect(),
            )
        };
        for &h in &hs {
            for &k in &ks {
                let boundary = if above {
                    crate::doublecat::Boundary { left: h, right: k, top: ob.top, bottom: sb.top }
                } else {
                    crate::doublecat::Boundary { left: h, right: k, top: sb.bottom, bottom: ob.bottom }
                };
                let mut count = 0;
                let mut found = None;
                for psi in d.squares_with_boundary(&boundary) {
                    let pasted = if above { d.vcomp(psi, s) } else { d.vcomp(s, psi) };
                    if pasted.ok() == Some(outer) {
                        count += 1;
                        found.get_or_insert(psi);
                    }
                }
                if count != 1 {
                    return CartesianCertificate {
                        square: s,
                        above,
                        factors,
                        counterexample: Some(FactorFailure { outer, h, k, count }),
                    };
                }
                if keep {
                    factors.push(Factor {
                        outer,
                        h,
                        k,
                        factor: found.expect("one factor"),
                    });
                }
            }
        }
    }
    CartesianCertificate {
        square: s,
        above,
        factors,
        counterexample: None,
    }
}

fn cartesian_holds<D: DoubleCategory>(d: &D, s: D::Square, above: bool) -> bool {
    factor_search(d, s, above, false).counterexample.is_none()
}

/// `U(f)` is cartesian.
pub fn is_fully_faithful_morphism<D: DoubleCategory>(d: &D, f: MorId) -> bool {
    cartesian_holds(d, d.unit_square(f), true)
}

/// `U(f)` is opcartesian.
pub fn is_absolutely_dense_morphism<D: DoubleCategory>(d: &D, f: MorId) -> bool {
    cartesian_holds(d, d.unit_square(f), false)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MorphismClass {
    pub morphism: MorId,
    pub fully_faithful: bool,
    pub absolutely_dense: bool,
}

/// Fully faithful / absolutely dense flags for every vertical morphism.
pub fn classify_morphisms<D: DoubleCategory>(d: &D) -> Vec<MorphismClass> {
    d.vertical()
        .morphism_ids()
        .map(|f| MorphismClass {
            morphism: f,
            fully_faithful: is_fully_faithful_morphism(d, f),
            absolutely_dense: is_absolutely_dense_morphism(d, f),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FramedReport<S> {
    /// `niche.unfillable` (left, right, bottom) and `coniche.unfillable` (left, right, top).
    pub report: ValidationReport,
    /// Least cartesian filler of each niche that has one.
    pub cleavage: Vec<(Niche, S)>,
    /// Least opcartesian filler of each co-niche that has one.
    pub opcleavage: Vec<(CoNiche, S)>,
    /// The cleavage picks vertical identities over identity frames.
    pub normal: bool,
    /// The cleavage is closed under composition of frames.
    pub split: bool,
    pub op_normal: bool,
    pub op_split: bool,
}

impl<S> FramedReport<S> {
    pub fn is_framed(&self) -> bool {
        self.report.is_empty()
    }
}

/// Checks that every niche has a cartesian filler and every co-niche an opcartesian one, and
/// records the least-id cleavages with their normality and splitness.
pub fn is_framed<D: DoubleCategory>(d: &D) -> FramedReport<D::Square> {
    let v = d.vertical();
    let mut report = ValidationReport::new();
    let mut cart: FxHashMap<D::Square, bool> = FxHashMap::default();
    let mut opcart: FxHashMap<D::Square, bool> = FxHashMap::default();
    let mut cleavage = Vec::new();
    let mut opcleavage = Vec::new();
    for h in d.horizontal_ids() {
        let cell = d.horizontal_cell(h);
        // niches over h as a bottom edge
        let below = d.squares_with_bottom(h);
        let mut fillers: FxHashMap<(MorId, MorId), Vec<D::Square>> = FxHashMap::default();
        for &s in &below {
            let b = d.boundary(s);
            fillers.entry((b.left, b.right)).or_default().push(s);
        }
        for f in v.morphism_ids().filter(|&f| v.target(f) == cell.source) {
            for g in v.morphism_ids().filter(|&g| v.target(g) == cell.target) {
                let niche = Niche { left: f, right: g, bottom: h };
                let chosen = fillers.get(&(f, g)).and_then(|cands| {
                    cands
                        .iter()
                        .copied()
                        .find(|&s| *cart.entry(s).or_insert_with(|| factor_search_among(d, s, true, false, &below).holds()))
                });
                match chosen {
                    Some(s) => cleavage.push((niche, s)),
                    None => report.push("niche.unfillable", [f.0, g.0, h.0]),
                }
            }
        }
        let above = d.squares_with_top(h);
        let mut fillers: FxHashMap<(MorId, MorId), Vec<D::Square>> = FxHashMap::default();
        for &s in &above {
            let b = d.boundary(s);
            fillers.entry((b.left, b.right)).or_default().push(s);
        }
        for f in v.morphism_ids().filter(|&f| v.source(f) == cell.source) {
            for g in v.morphism_ids().filter(|&g| v.source(g) == cell.target) {
                let coniche = CoNiche { left: f, right: g, top: h };
                let chosen = fillers.get(&(f, g)).and_then(|cands| {
                    cands
                        .iter()
                        .copied()
                        .find(|&s| *opcart.entry(s).or_insert_with(|| factor_search_among(d, s, false, false, &above).holds()))
                });
                match chosen {
                    Some(s) => opcleavage.push((coniche, s)),
                    None => report.push("coniche.unfillable", [f.0, g.0, h.0]),
                }
            }
        }
    }
    let (normal, split) = cleavage_flags(d, &cleavage, true);
    let (op_normal, op_split) = cleavage_flags(d, &opcleavage, false);
    FramedReport {
        report,
        cleavage,
        opcleavage,
        normal,
        split,
        op_normal,
        op_split,
    }
}

trait NicheLike: Copy + Eq + std::hash::Hash {
    fn parts(&self) -> (MorId, MorId, crate::ids::HorId);
}

impl NicheLike for Niche {
    fn parts(&self) -> (MorId, MorId, crate::ids::HorId) {
        (self.left, self.right, self.bottom)
    }
}

impl NicheLike for CoNiche {
    fn parts(&self) -> (MorId, MorId, crate::ids::HorId) {
        (self.left, self.right, self.top)
    }
}

fn cleavage_flags<D: DoubleCategory, N: NicheLike>(d: &D, cleavage: &[(N, D::Square)], cartesian: bool) -> (bool, bool) {
    let v = d.vertical();
    let chosen: FxHashMap<(MorId, MorId, crate::ids::HorId), D::Square> =
        cleavage.iter().map(|(n, s)| (n.parts(), *s)).collect();
    let mut normal = true;
    for (n, s) in cleavage {
        let (f, g, h) = n.parts();
        if v.is_identity(f) && v.is_identity(g) && *s != d.vertical_identity(h) {
            normal = false;
        }
    }
    let mut split = true;
    'outer: for (n, s) in cleavage {
        let (f, g, h) = n.parts();
        let b = d.boundary(*s);
        // the edge the next lift starts from
        let next = if cartesian { b.top } else { b.bottom };
        let next_cell = d.horizontal_cell(next);
        let (hs, ks) = if cartesian {
            (
                v.morphism_ids().filter(|&x| v.target(x) == next_cell.source).collect::<Vec<_>>(),
                v.morphism_ids().filter(|&x| v.target(x) == next_cell.target).collect::<Vec<_>>(),
            )
        } else {
            (
                v.morphism_ids().filter(|&x| v.source(x) == next_cell.source).collect::<Vec<_>>(),
                v.morphism_ids().filter(|&x| v.source(x) == next_cell.target).collect::<Vec<_>>(),
            )
        };
        for &x in &hs {
            for &y in &ks {
                let Some(&second) = chosen.get(&(x, y, next)) else { continue };
                let (fx, gy) = if cartesian {
                    (v.entry(f, x), v.entry(g, y))
                } else {
                    (v.entry(x, f), v.entry(y, g))
                };
                let (Some(fx), Some(gy)) = (fx, gy) else { continue };
                let Some(&whole) = chosen.get(&(fx, gy, h)) else { continue };
                let pasted = if cartesian { d.vcomp(second, *s) } else { d.vcomp(*s, second) };
                if pasted.ok() != Some(whole) {
                    split = false;
                    break 'outer;
                }
            }
        }
    }
    (normal, split)
}

fn require_framed<D: DoubleCategory>(d: &D) -> Result<()> {
    let framed = is_framed(d);
    if framed.is_framed() {
        Ok(())
    } else {
        Err(CoreError::NotFramed(framed.report))
    }
}

/// Every vertical morphism is fully faithful; fails with `NotFramed` first if `d` is not framed.
pub fn is_fully_faithful<D: DoubleCategory>(d: &D) -> Result<bool> {
    require_framed(d)?;
    Ok(d.vertical().morphism_ids().all(|f| is_fully_faithful_morphism(d, f)))
}

/// Every vertical morphism is absolutely dense; fails with `NotFramed` first if `d` is not framed.
pub fn is_absolutely_dense<D: DoubleCategory>(d: &D) -> Result<bool> {
    require_framed(d)?;
    Ok(d.vertical().morphism_ids().all(|f| is_absolutely_dense_morphism(d, f)))
}

/// C*: squares whose frames are vertical isomorphisms.
pub fn restrict_star(c: &FiniteDoubleCategory) -> Result<Restriction> {
    let v = c.vertical();
    restrict_frames(c, |f| v.is_isomorphism(f))
}

/// C̃: squares whose frames are fully faithful.
pub fn restrict_tilde(c: &FiniteDoubleCategory) -> Result<Restriction> {
    require_framed(c)?;
    let ff: Vec<bool> = c.vertical().morphism_ids().map(|f| is_fully_faithful_morphism(c, f)).collect();
    restrict_frames(c, |f| ff[f.index()])
}

/// Ĉ: squares whose frames are absolutely dense.
pub fn restrict_hat(c: &FiniteDoubleCategory) -> Result<Restriction> {
    require_framed(c)?;
    let ad: Vec<bool> = c.vertical().morphism_ids().map(|f| is_absolutely_dense_morphism(c, f)).collect();
    restrict_frames(c, |f| ad[f.index()])
}

/// The least vertical morphism of the domain whose image is not fully faithful in `c`, if any.
pub fn tilde_landing_witness(functor: &DoubleFunctorTable, dom: &FiniteDoubleCategory, c: &FiniteDoubleCategory) -> Option<MorId> {
    dom.vertical()
        .morphism_ids()
        .find(|&f| !is_fully_faithful_morphism(c, functor.vertical.morphism(f)))
}

/// Every square in the image of `functor` lies in C̃.
pub fn framed_functor_lands_in_tilde(functor: &DoubleFunctorTable, dom: &FiniteDoubleCategory, c: &FiniteDoubleCategory) -> bool {
    tilde_landing_witness(functor, dom, c).is_none()
}
