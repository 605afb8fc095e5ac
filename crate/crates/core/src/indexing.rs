//! π₂-indexings and opindexings on decorated 2-categories.
//!
//! For `f: a → b` in B*, an indexing slides π₂(B, a) down to π₂(B, b) and an opindexing slides
//! π₂(B, b) up to π₂(B, a).

use serde::{Deserialize, Serialize};

use crate::cat::FiniteCategory;
use crate::doublecat::{DoubleCategory, DoubleFunctorTable, FiniteDoubleCategory};
use crate::error::{CoreError, Result};
use crate::ids::{ElemId, MorId, ObjId, TwoCellId};
use crate::pi2::{pi2_monoid, two_cell_pi2_monoids, Pi2Monoid};
use crate::report::ValidationReport;
use crate::twocat::{decorated_horizontalization, validate_decoration, DecoratedTwoCategory};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Indexing,
    Opindexing,
}

impl Direction {
    /// The object whose π₂ the map for `f` reads from.
    pub fn domain(self, bstar: &FiniteCategory, f: MorId) -> ObjId {
        match self {
            Direction::Indexing => bstar.source(f),
            Direction::Opindexing => bstar.target(f),
        }
    }

    /// The object whose π₂ the map for `f` lands in.
    pub fn codomain(self, bstar: &FiniteCategory, f: MorId) -> ObjId {
        match self {
            Direction::Indexing => bstar.target(f),
            Direction::Opindexing => bstar.source(f),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pi2Indexing {
    pub direction: Direction,
    pub base: DecoratedTwoCategory,
    /// π₂(B, a) for each object `a`.
    pub monoids: Vec<Pi2Monoid<TwoCellId>>,
    /// For each morphism of B*, the image of each element of its domain monoid.
    pub maps: Vec<Vec<ElemId>>,
}

impl Pi2Indexing {
    /// Computes the π₂ monoids of `base`; the maps are checked by [`validate_indexing`].
    pub fn new(direction: Direction, base: DecoratedTwoCategory, maps: Vec<Vec<ElemId>>) -> Result<Self> {
        let monoids = two_cell_pi2_monoids(&base.b)?;
        Ok(Self {
            direction,
            base,
            monoids,
            maps,
        })
    }

    /// Tabulates `rule(f, x)` for every morphism `f` of B* and every `x` in its domain monoid.
    pub fn from_fn(
        direction: Direction,
        base: DecoratedTwoCategory,
        rule: impl Fn(MorId, ElemId) -> ElemId,
    ) -> Result<Self> {
        let mut out = Self::new(direction, base, Vec::new())?;
        out.maps = out
            .base
            .bstar
            .morphism_ids()
            .map(|f| {
                let a = direction.domain(&out.base.bstar, f);
                out.monoids[a.index()].presentation.elements().map(|x| rule(f, x)).collect()
            })
            .collect();
        Ok(out)
    }

    /// Every element goes to the unit. Only an indexing when π₂ is trivial wherever B* has
    /// non-identity morphisms out of it.
    pub fn trivial(direction: Direction, base: DecoratedTwoCategory) -> Result<Self> {
        let units: Vec<ElemId> = two_cell_pi2_monoids(&base.b)?.iter().map(|m| m.presentation.unit()).collect();
        let bstar = base.bstar.clone();
        Self::from_fn(direction, base, |f, x| {
            if bstar.is_identity(f) {
                x
            } else {
                units[direction.codomain(&bstar, f).index()]
            }
        })
    }

    pub fn domain_object(&self, f: MorId) -> ObjId {
        self.direction.domain(&self.base.bstar, f)
    }

    pub fn codomain_object(&self, f: MorId) -> ObjId {
        self.direction.codomain(&self.base.bstar, f)
    }

    /// Φ_f(x) where `x` lives in π₂ at `at`.
    pub fn apply(&self, f: MorId, at: ObjId, x: ElemId) -> Result<ElemId> {
        if f.index() >= self.base.bstar.morphism_count() {
            return Err(CoreError::Range(format!("morphism {f}")));
        }
        if at != self.domain_object(f) || x.index() >= self.monoids[at.index()].size() {
            return Err(CoreError::DirectionMismatch { object: at, elem: x });
        }
        self.maps
            .get(f.index())
            .and_then(|m| m.get(x.index()))
            .copied()
            .ok_or_else(|| CoreError::MissingEntry(format!("Φ_{f}({x})")))
    }

    /// Φ_f on 2-cells.
    pub fn apply_cell(&self, f: MorId, t: TwoCellId) -> Result<TwoCellId> {
        let at = self.domain_object(f);
        let m = &self.monoids[at.index()];
        let x = m.position(t).ok_or(CoreError::DirectionMismatch {
            object: at,
            elem: ElemId(u32::MAX),
        })?;
        let y = self.apply(f, at, x)?;
        Ok(self.monoids[self.codomain_object(f).index()].element(y))
    }
}

/// Law ids: `decoration.*`, `pi2.identification` (object), `shape` (morphism),
/// `range` (morphism, element), `homomorphism.unit` (morphism),
/// `homomorphism.operation` (morphism, x, y), `functoriality.identity` (object, element),
/// `functoriality.composition` (second, first, element).
pub fn validate_indexing(phi: &Pi2Indexing) -> ValidationReport {
    let mut report = ValidationReport::new();
    report.absorb("decoration", validate_decoration(&phi.base));
    if !report.is_empty() {
        return report;
    }
    match two_cell_pi2_monoids(&phi.base.b) {
        Ok(computed) => {
            for a in phi.base.bstar.objects() {
                if phi.monoids.get(a.index()) != computed.get(a.index()) {
                    report.push("pi2.identification", [a.0]);
                }
            }
            if phi.monoids.len() != computed.len() {
                report.push("pi2.identification", [phi.monoids.len() as u32]);
            }
        }
        Err(_) => report.push("pi2.identification", []),
    }
    if !report.is_empty() {
        return report;
    }
    let bstar = &phi.base.bstar;
    if phi.maps.len() != bstar.morphism_count() {
        report.push("shape", [phi.maps.len() as u32]);
        return report;
    }
    for f in bstar.morphism_ids() {
        let dom = &phi.monoids[phi.domain_object(f).index()].presentation;
        let cod = &phi.monoids[phi.codomain_object(f).index()].presentation;
        let map = &phi.maps[f.index()];
        if map.len() != dom.size() {
            report.push("shape", [f.0]);
            continue;
        }
        if let Some(x) = dom.elements().find(|x| map[x.index()].index() >= cod.size()) {
            report.push("range", [f.0, x.0]);
            continue;
        }
        if map[dom.unit().index()] != cod.unit() {
            report.push("homomorphism.unit", [f.0]);
        }
        for x in dom.elements() {
            for y in dom.elements() {
                if map[dom.op(x, y).index()] != cod.op(map[x.index()], map[y.index()]) {
                    report.push("homomorphism.operation", [f.0, x.0, y.0]);
                }
            }
        }
    }
    if !report.is_empty() {
        return report;
    }
    for a in bstar.objects() {
        let id = bstar.identity(a);
        for x in phi.monoids[a.index()].presentation.elements() {
            if phi.maps[id.index()][x.index()] != x {
                report.push("functoriality.identity", [a.0, x.0]);
            }
        }
    }
    for (g, f, gf) in bstar.composition_entries() {
        // indexing: Φ_{g∘f} = Φ_g ∘ Φ_f; opindexing: Φ_{g∘f} = Φ_f ∘ Φ_g
        let (first, second) = match phi.direction {
            Direction::Indexing => (f, g),
            Direction::Opindexing => (g, f),
        };
        let dom = &phi.monoids[phi.domain_object(gf).index()].presentation;
        for x in dom.elements() {
            let twice = phi.maps[second.index()][phi.maps[first.index()][x.index()].index()];
            if phi.maps[gf.index()][x.index()] != twice {
                report.push("functoriality.composition", [g.0, f.0, x.0]);
            }
        }
    }
    report
}

/// Element `x` of π₂(C, a) as a square, given the π₂ monoids of C.
fn square_of(monoids: &[Pi2Monoid<crate::ids::SqId>], a: ObjId, x: ElemId) -> crate::ids::SqId {
    monoids[a.index()].element(x)
}

/// Empty iff C induces Φ: for opindexings U(f) ⊟ φ = Φ_f(φ) ⊟ U(f) for all f: a → b and
/// φ ∈ π₂(C, b); for indexings φ ⊟ U(f) = U(f) ⊟ Φ_f(φ) for all φ ∈ π₂(C, a).
///
/// Law ids: `induces` (morphism, element), `missing` (morphism, element).
pub fn check_induces(c: &FiniteDoubleCategory, phi: &Pi2Indexing) -> Result<ValidationReport> {
    if decorated_horizontalization(c)? != phi.base {
        return Err(CoreError::BaseMismatch);
    }
    let monoids = crate::pi2::pi2_monoids(c)?;
    let mut report = ValidationReport::new();
    let v = c.vertical();
    for f in v.morphism_ids() {
        let u = c.unit_square(f);
        let (from, to) = (phi.domain_object(f), phi.codomain_object(f));
        for x in monoids[from.index()].presentation.elements() {
            let y = phi.apply(f, from, x)?;
            let (sx, sy) = (square_of(&monoids, from, x), square_of(&monoids, to, y));
            let (lhs, rhs) = match phi.direction {
                Direction::Opindexing => (c.vcomp(u, sx), c.vcomp(sy, u)),
                Direction::Indexing => (c.vcomp(sx, u), c.vcomp(u, sy)),
            };
            match (lhs, rhs) {
                (Ok(l), Ok(r)) if l == r => {}
                (Ok(_), Ok(_)) => report.push("induces", [f.0, x.0]),
                _ => report.push("missing", [f.0, x.0]),
            }
        }
    }
    Ok(report)
}

/// The maps of the (op)indexing induced by `d`, found by exhaustive factor search, together with
/// the π₂ monoids they act on.
#[allow(clippy::type_complexity)]
pub fn induced_maps<D: DoubleCategory>(
    d: &D,
    direction: Direction,
) -> Result<(Vec<Pi2Monoid<D::Square>>, Vec<Vec<ElemId>>)> {
    let v = d.vertical();
    let monoids: Vec<_> = v.objects().map(|a| pi2_monoid(d, a)).collect::<Result<_>>()?;
    let mut maps = Vec::with_capacity(v.morphism_count());
    for f in v.morphism_ids() {
        let u = d.unit_square(f);
        let from = direction.domain(v, f);
        let to = direction.codomain(v, f);
        let mut map = Vec::with_capacity(monoids[from.index()].size());
        for (x, &phi) in monoids[from.index()].elements.iter().enumerate() {
            let lhs = match direction {
                Direction::Opindexing => d.vcomp(u, phi)?,
                Direction::Indexing => d.vcomp(phi, u)?,
            };
            let mut found = Vec::new();
            for (y, &psi) in monoids[to.index()].elements.iter().enumerate() {
                let rhs = match direction {
                    Direction::Opindexing => d.vcomp(psi, u)?,
                    Direction::Indexing => d.vcomp(u, psi)?,
                };
                if rhs == lhs {
                    found.push(ElemId::from(y));
                }
            }
            match found.len() {
                1 => map.push(found[0]),
                0 => {
                    return Err(CoreError::NoFactorization {
                        morphism: f,
                        element: ElemId::from(x),
                    })
                }
                count => {
                    return Err(CoreError::NonUniqueFactorization {
                        morphism: f,
                        element: ElemId::from(x),
                        count,
                    })
                }
            }
        }
        maps.push(map);
    }
    Ok((monoids, maps))
}

fn induce(c: &FiniteDoubleCategory, direction: Direction) -> Result<Pi2Indexing> {
    let (_, maps) = induced_maps(c, direction)?;
    let phi = Pi2Indexing::new(direction, decorated_horizontalization(c)?, maps)?;
    let report = validate_indexing(&phi);
    if !report.is_empty() {
        return Err(CoreError::Invalid {
            context: "induced indexing",
            report,
        });
    }
    let report = check_induces(c, &phi)?;
    if !report.is_empty() {
        return Err(CoreError::NotInducing(report));
    }
    Ok(phi)
}

/// The π₂-opindexing on H*C induced by a fully faithful C.
pub fn induce_opindexing(c: &FiniteDoubleCategory) -> Result<Pi2Indexing> {
    induce(c, Direction::Opindexing)
}

/// The π₂-indexing on H*C induced by an absolutely dense C.
pub fn induce_indexing(c: &FiniteDoubleCategory) -> Result<Pi2Indexing> {
    induce(c, Direction::Indexing)
}

/// Empty iff F₁(Φ_f(φ)) = Φ'_{F₀ f}(F₁ φ) for every vertical morphism `f` of `dom` and every φ in
/// the domain monoid of Φ_f. `phi_dom` and `phi_cod` must be based on H*dom and H*cod.
///
/// Law ids: `indexing.commutes` (morphism, element), `pi2.preserved` (morphism, element),
/// `direction` (no witness).
pub fn check_indexing_morphism(
    functor: &DoubleFunctorTable,
    dom: &FiniteDoubleCategory,
    cod: &FiniteDoubleCategory,
    phi_dom: &Pi2Indexing,
    phi_cod: &Pi2Indexing,
) -> Result<ValidationReport> {
    let mut report = ValidationReport::new();
    if phi_dom.direction != phi_cod.direction {
        report.push("direction", []);
        return Ok(report);
    }
    let m_dom = crate::pi2::pi2_monoids(dom)?;
    let m_cod = crate::pi2::pi2_monoids(cod)?;
    for f in dom.vertical().morphism_ids() {
        let ff = functor.vertical.morphism(f);
        let from = phi_dom.domain_object(f);
        let to = phi_dom.codomain_object(f);
        for x in m_dom[from.index()].presentation.elements() {
            let y = phi_dom.apply(f, from, x)?;
            let lhs = functor.square(square_of(&m_dom, to, y));
            let image = functor.square(square_of(&m_dom, from, x));
            let image_at = phi_cod.domain_object(ff);
            let Some(fx) = m_cod[image_at.index()].position(image) else {
                report.push("pi2.preserved", [f.0, x.0]);
                continue;
            };
            let rhs = square_of(&m_cod, phi_cod.codomain_object(ff), phi_cod.apply(ff, image_at, fx)?);
            if lhs != rhs {
                report.push("indexing.commutes", [f.0, x.0]);
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::CommMonoidPresentation;
    use crate::twocat::FiniteTwoCategory;

    fn z2_over(bstar: FiniteCategory) -> DecoratedTwoCategory {
        DecoratedTwoCategory {
            bstar,
            b: FiniteTwoCategory::double_suspension(&CommMonoidPresentation::cyclic(2)),
        }
    }

    #[test]
    fn identity_opindexing_on_z2_is_valid_and_zero_map_is_not() {
        let base = z2_over(FiniteCategory::cyclic_group(2));
        let phi = Pi2Indexing::from_fn(Direction::Opindexing, base.clone(), |_, x| x).unwrap();
        assert!(validate_indexing(&phi).is_empty());
        assert_eq!(phi.apply(MorId(1), ObjId(0), ElemId(1)).unwrap(), ElemId(1));
        let zero = Pi2Indexing::trivial(Direction::Opindexing, base).unwrap();
        let report = validate_indexing(&zero);
        assert!(report.has_law("functoriality.composition"));
    }

    #[test]
    fn wrong_object_is_a_direction_mismatch() {
        let base = z2_over(FiniteCategory::discrete(1));
        let phi = Pi2Indexing::from_fn(Direction::Indexing, base, |_, x| x).unwrap();
        assert!(matches!(
            phi.apply(MorId(0), ObjId(1), ElemId(0)),
            Err(CoreError::DirectionMismatch { .. })
        ));
    }
}
