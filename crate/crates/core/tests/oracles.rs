//! Brute-force oracles checked against the library on every enumerated case.

mod common;

use std::collections::{BTreeMap, BTreeSet};

use common::*;
use dblcat::cat::{validate_category, validate_functor, validate_monoid, CommMonoidPresentation, FiniteCategory, FunctorTable, Morphism};
use dblcat::crossprod::{
    build_crossed_product, check_eval_injective, cp_boundary, cp_hcomp, cp_vcomp, evaluation_functor, CpSquare,
};
use dblcat::doublecat::{validate_double_category, Boundary, DoubleCategory};
use dblcat::framed::{is_absolutely_dense_morphism, is_fully_faithful_morphism};
use dblcat::ids::{ElemId, HorId, MorId, ObjId, SqId};
use dblcat::indexing::{check_induces, induce_indexing, induce_opindexing, validate_indexing, Direction, Pi2Indexing};
use dblcat::instances::commuting::{build_commuting_squares, CommutingSquares};
use dblcat::instances::nat::nat_endomorphisms;
use dblcat::instances::rel::{build_rel, FrameClass, RelDoubleCategory};
use dblcat::instances::span::build_span;
use dblcat::instances::spec::{InstanceKind, NamedCategory};
use dblcat::instances::witness::noninjectivity_search;
use dblcat::length::globularly_generated_piece;
use dblcat::pi2::{eckmann_hilton_check, pi2_monoid};
use dblcat::twocat::decorated_horizontalization;

// --- categories -------------------------------------------------------------------------------

/// Paths in the graph `0 -f-> 1 -g-> 2`, as (start, edge labels).
fn two_path_paths() -> Vec<(usize, Vec<char>)> {
    vec![(0, vec![]), (1, vec![]), (2, vec![]), (0, vec!['f']), (1, vec!['g']), (0, vec!['f', 'g'])]
}

fn path_end(p: &(usize, Vec<char>)) -> usize {
    p.0 + p.1.len()
}

fn free_two_path() -> FiniteCategory {
    let paths = two_path_paths();
    let morphisms = paths
        .iter()
        .map(|p| Morphism {
            source: ObjId::from(p.0),
            target: ObjId::from(path_end(p)),
        })
        .collect();
    let mut entries = Vec::new();
    for (i, first) in paths.iter().enumerate() {
        for (j, second) in paths.iter().enumerate() {
            if path_end(first) == second.0 {
                let mut labels = first.1.clone();
                labels.extend(&second.1);
                let k = paths.iter().position(|p| p.0 == first.0 && p.1 == labels).unwrap();
                entries.push((MorId::from(j), MorId::from(i), MorId::from(k)));
            }
        }
    }
    FiniteCategory::new(3, morphisms, vec![MorId(0), MorId(1), MorId(2)], entries).unwrap()
}

#[test]
fn path_concatenation_matches_the_chain() {
    let free = free_two_path();
    assert!(validate_category(&free).is_empty());
    // g after f is the length-two path
    assert_eq!(free.compose(MorId(4), MorId(3)).unwrap(), MorId(5));
    let chain = FiniteCategory::chain(2);
    assert!(validate_category(&chain).is_empty());
    let ends = |c: &FiniteCategory, f: MorId| (c.source(f), c.target(f));
    for (second, first, r) in free.composition_entries() {
        let (s2, f2) = (
            chain.morphism_ids().find(|&m| ends(&chain, m) == ends(&free, second)).unwrap(),
            chain.morphism_ids().find(|&m| ends(&chain, m) == ends(&free, first)).unwrap(),
        );
        assert_eq!(ends(&chain, chain.compose(s2, f2).unwrap()), ends(&free, r));
    }
}

#[test]
fn z2_group_oracle() {
    let z2 = FiniteCategory::cyclic_group(2);
    let xor = |a: usize, b: usize| a ^ b;
    for a in 0..2 {
        for b in 0..2 {
            assert_eq!(z2.compose(MorId::from(a), MorId::from(b)).unwrap(), MorId::from(xor(a, b)));
        }
    }
    assert!(z2.is_isomorphism(MorId(1)));
    assert_eq!(z2.isomorphism_inverse(MorId(1)), Some(MorId(1)));
    let m = CommMonoidPresentation::from_fn(2, 0, xor).unwrap();
    assert!(validate_monoid(&m).is_empty());
    assert_eq!(m, CommMonoidPresentation::cyclic(2));
}

#[test]
fn functor_breaking_composition_is_named_at_every_broken_pair() {
    let c = free_two_path();
    let z2 = FiniteCategory::cyclic_group(2);
    // f and g both go to the generator, so gf should go to the identity
    let broken = FunctorTable {
        objects: vec![ObjId(0); 3],
        morphisms: vec![MorId(0), MorId(0), MorId(0), MorId(1), MorId(1), MorId(1)],
    };
    let report = validate_functor(&broken, &c, &z2);
    let oracle: Vec<(MorId, MorId)> = c
        .composition_entries()
        .filter(|&(g, f, gf)| {
            let img = |m: MorId| broken.morphisms[m.index()];
            z2.entry(img(g), img(f)) != Some(img(gf))
        })
        .map(|(g, f, _)| (g, f))
        .collect();
    assert_eq!(oracle, vec![(MorId(4), MorId(3))]);
    for (g, f) in oracle {
        assert!(
            report.violations.iter().any(|v| v.witness == vec![g.0, f.0]),
            "({g}, {f}) not reported: {report:?}"
        );
    }
}

// --- relations ---------------------------------------------------------------------------------

type Pairs = BTreeSet<(usize, usize)>;

fn pairs_of(bits: u64, cols: usize) -> Pairs {
    (0..64).filter(|k| bits >> k & 1 == 1).map(|k| (k / cols, k % cols)).collect()
}

fn compose_pairs(r: &Pairs, s: &Pairs) -> Pairs {
    let mut out = Pairs::new();
    for &(i, j) in r {
        for &(j2, k) in s {
            if j == j2 {
                out.insert((i, k));
            }
        }
    }
    out
}

fn all_functions(from: usize, to: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..from {
        out = out
            .into_iter()
            .flat_map(|p: Vec<usize>| {
                (0..to).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

#[test]
fn rel2_horizontal_composition_matches_pair_sets() {
    let rel = RelDoubleCategory::up_to(2).unwrap();
    let sizes = [1usize, 2];
    let n = rel.horizontal_cell_count();
    for l in 0..n {
        for r in 0..n {
            let (a, b) = (rel.relation(HorId::from(l)), rel.relation(HorId::from(r)));
            let got = rel.compose_horizontal(HorId::from(l), HorId::from(r));
            if a.target != b.source {
                assert_eq!(got, None);
                continue;
            }
            let want = compose_pairs(&pairs_of(a.bits, sizes[a.target.index()]), &pairs_of(b.bits, sizes[b.target.index()]));
            let g = rel.relation(got.unwrap());
            assert_eq!(pairs_of(g.bits, sizes[g.target.index()]), want);
        }
    }
}

/// Endpoint sizes, both functions, top and bottom relation.
type RelSquareKey = ((usize, usize, usize, usize), Vec<usize>, Vec<usize>, Pairs, Pairs);

/// Squares of Rel(2) by powerset enumeration: relations R, S, functions f, g with
/// `(i, j) ∈ R ⟹ (f i, g j) ∈ S`.
fn rel2_square_oracle() -> BTreeSet<RelSquareKey> {
    let sizes = [1usize, 2];
    let mut out = BTreeSet::new();
    for x in 0..2 {
        for y in 0..2 {
            for x2 in 0..2 {
                for y2 in 0..2 {
                    for r in 0..1u64 << (sizes[x] * sizes[y]) {
                        let r = pairs_of(r, sizes[y]);
                        for s in 0..1u64 << (sizes[x2] * sizes[y2]) {
                            let s = pairs_of(s, sizes[y2]);
                            for f in all_functions(sizes[x], sizes[x2]) {
                                for g in all_functions(sizes[y], sizes[y2]) {
                                    if r.iter().all(|&(i, j)| s.contains(&(f[i], g[j]))) {
                                        out.insert(((x, y, x2, y2), f.clone(), g, r.clone(), s.clone()));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

#[test]
fn rel2_squares_and_compositions_match_the_powerset_oracle() {
    let rel = RelDoubleCategory::up_to(2).unwrap();
    let c = build_rel(2, BUDGET).unwrap();
    let sizes = [1usize, 2];
    let fun = |f: MorId| rel.frames.function(f).iter().map(|&x| x as usize).collect::<Vec<_>>();
    let describe = |b: Boundary| {
        let (t, s) = (rel.relation(b.top), rel.relation(b.bottom));
        (
            (t.source.index(), t.target.index(), s.source.index(), s.target.index()),
            fun(b.left),
            fun(b.right),
            pairs_of(t.bits, sizes[t.target.index()]),
            pairs_of(s.bits, sizes[s.target.index()]),
        )
    };
    let oracle = rel2_square_oracle();
    let mine: BTreeSet<_> = c.squares().iter().map(|&b| describe(b)).collect();
    assert_eq!(c.square_count(), oracle.len());
    assert_eq!(mine, oracle);

    // pasting: frames compose as functions, outer relations are kept
    let compose_fn = |g: &[usize], f: &[usize]| f.iter().map(|&i| g[i]).collect::<Vec<_>>();
    for (top, bottom, r) in c.vcomp_entries() {
        let (t, b, x) = (describe(c.boundary_of(top)), describe(c.boundary_of(bottom)), describe(c.boundary_of(r)));
        assert_eq!(x.1, compose_fn(&b.1, &t.1));
        assert_eq!(x.2, compose_fn(&b.2, &t.2));
        assert_eq!((x.3, x.4), (t.3, b.4));
    }
    for (l, rr, x) in c.hcomp_entries() {
        let (lb, rb, xb) = (describe(c.boundary_of(l)), describe(c.boundary_of(rr)), describe(c.boundary_of(x)));
        assert_eq!(xb.3, compose_pairs(&lb.3, &rb.3));
        assert_eq!(xb.4, compose_pairs(&lb.4, &rb.4));
    }

    // U(f) is the square id ⊆ id over the graph of f
    for f in c.vertical().morphism_ids() {
        let (_, ff, gg, top, bottom) = describe(c.boundary_of(c.unit_square(f)));
        assert_eq!(ff, gg);
        assert!(top.iter().all(|&(i, j)| i == j) && top.len() == ff.len());
        assert!(bottom.iter().all(|&(i, j)| i == j));
    }

    // globular squares are the identity-framed ones; π₂ has one element
    let globular_oracle = oracle
        .iter()
        .filter(|s| {
            let idf = |v: &Vec<usize>| v.iter().enumerate().all(|(i, &x)| i == x);
            s.0 .0 == s.0 .2 && s.0 .1 == s.0 .3 && idf(&s.1) && idf(&s.2)
        })
        .count();
    assert_eq!(c.globular_squares().len(), globular_oracle);
    // subset pairs: Σ over endpoint pairs of 3^(|x||y|)
    let subset_pairs: usize = [1usize, 2].iter().flat_map(|&x| [1usize, 2].map(|y| 3usize.pow((x * y) as u32))).sum();
    assert_eq!(globular_oracle, subset_pairs);
    let h = decorated_horizontalization(&c).unwrap();
    assert_eq!(h.b.two_cell_count(), subset_pairs);
    for a in c.vertical().objects() {
        assert_eq!(pi2_monoid(&c, a).unwrap().size(), 1);
    }
}

#[test]
fn rel2_fully_faithful_and_absolutely_dense_match_the_factor_oracle() {
    let c = build_rel(2, BUDGET).unwrap();
    let rel = RelDoubleCategory::up_to(2).unwrap();
    for f in c.vertical().morphism_ids() {
        let u = c.unit_square(f);
        let ff = factor_oracle(&c, u, true);
        let ad = factor_oracle(&c, u, false);
        assert_eq!(is_fully_faithful_morphism(&c, f), ff, "{f}");
        assert_eq!(is_absolutely_dense_morphism(&c, f), ad, "{f}");
        assert_eq!(ff, rel.frames.is_injective(f), "{f}");
        assert_eq!(ad, rel.frames.is_surjective(f), "{f}");
    }
}

// --- commuting squares -------------------------------------------------------------------------

fn named(n: &NamedCategory) -> FiniteCategory {
    n.build()
}

#[test]
fn commuting_squares_paste_pointwise() {
    for cat in [named(&NamedCategory::Chain { length: 2 }), named(&NamedCategory::Cyclic { order: 2 }), named(&NamedCategory::Discrete { objects: 2 })] {
        let c = build_commuting_squares(&cat).unwrap();
        assert!(validate_double_category(&c).is_empty());
        let mor = |h: HorId| MorId(h.0);
        // brute-force count of commuting boundaries over all 4-tuples
        let mut count = 0;
        for l in cat.morphism_ids() {
            for r in cat.morphism_ids() {
                for t in cat.morphism_ids() {
                    for b in cat.morphism_ids() {
                        let ok = cat.source(t) == cat.source(l)
                            && cat.target(t) == cat.source(r)
                            && cat.source(b) == cat.target(l)
                            && cat.target(b) == cat.target(r)
                            && cat.compose(r, t).unwrap() == cat.compose(b, l).unwrap();
                        count += usize::from(ok);
                    }
                }
            }
        }
        assert_eq!(c.square_count(), count);
        for (x, y, r) in c.vcomp_entries() {
            let (xb, yb, rb) = (c.boundary_of(x), c.boundary_of(y), c.boundary_of(r));
            assert_eq!(rb.left, cat.compose(yb.left, xb.left).unwrap());
            assert_eq!(rb.right, cat.compose(yb.right, xb.right).unwrap());
            assert_eq!((rb.top, rb.bottom), (xb.top, yb.bottom));
        }
        for (x, y, r) in c.hcomp_entries() {
            let (xb, yb, rb) = (c.boundary_of(x), c.boundary_of(y), c.boundary_of(r));
            assert_eq!(mor(rb.top), cat.compose(mor(yb.top), mor(xb.top)).unwrap());
            assert_eq!(mor(rb.bottom), cat.compose(mor(yb.bottom), mor(xb.bottom)).unwrap());
            assert_eq!((rb.left, rb.right), (xb.left, yb.right));
        }
        // HC: one 2-cell per 1-cell, the identity; π₂ trivial
        let h = decorated_horizontalization(&c).unwrap();
        assert_eq!(h.b.two_cell_count(), cat.morphism_count());
        for a in cat.objects() {
            assert!(pi2_monoid(&c, a).unwrap().is_trivial());
        }
        let implicit = CommutingSquares::new(cat.clone());
        assert_eq!(implicit.all_squares().len(), count);
    }
}

// --- monoids, π₂, Nat ----------------------------------------------------------------------------

#[test]
fn bundle_pi2_matches_its_monoid() {
    let klein = CommMonoidPresentation::from_fn(4, 0, |a, b| a ^ b).unwrap();
    let max = CommMonoidPresentation::from_fn(3, 0, |a, b| a.max(b)).unwrap();
    for m in [CommMonoidPresentation::cyclic(2), CommMonoidPresentation::cyclic(4), klein, max] {
        let c = build(&spec(InstanceKind::MonoidBundle { monoid: m.clone() }));
        let p = pi2_monoid(&c, ObjId(0)).unwrap();
        assert_eq!(p.size(), m.size());
        // elements are squares in id order, which is element order for the bundle
        for x in m.elements() {
            for y in m.elements() {
                let sq = c.vcomp(p.element(x), p.element(y)).unwrap();
                assert_eq!(p.position(sq), Some(m.op(x, y)));
            }
        }
        assert!(eckmann_hilton_check(&c, ObjId(0)).is_empty());
    }
}

/// Families of endomorphisms, one per object, tried exhaustively.
fn nat_oracle(cat: &FiniteCategory) -> Vec<Vec<MorId>> {
    let mut families: Vec<Vec<MorId>> = vec![vec![]];
    for a in cat.objects() {
        families = families
            .into_iter()
            .flat_map(|p| {
                cat.hom(a, a).iter().map(move |&e| {
                    let mut q = p.clone();
                    q.push(e);
                    q
                })
            })
            .collect();
    }
    families
        .into_iter()
        .filter(|fam| {
            cat.morphism_ids().all(|f| {
                let (x, y) = (cat.source(f), cat.target(f));
                cat.compose(fam[y.index()], f).unwrap() == cat.compose(f, fam[x.index()]).unwrap()
            })
        })
        .collect()
}

#[test]
fn nat_endomorphisms_match_the_family_oracle() {
    for cat in [
        FiniteCategory::cyclic_group(2),
        FiniteCategory::cyclic_group(3),
        FiniteCategory::chain(2),
        FiniteCategory::discrete(2),
        free_two_path(),
    ] {
        let mut oracle = nat_oracle(&cat);
        oracle.sort();
        assert_eq!(nat_endomorphisms(&cat), oracle);
    }
    // the center of an abelian group is the group
    assert_eq!(nat_endomorphisms(&FiniteCategory::cyclic_group(2)).len(), 2);
    assert_eq!(nat_endomorphisms(&free_two_path()).len(), 1);
}

// --- indexings -----------------------------------------------------------------------------------

#[test]
fn z2_opindexing_candidates_are_decided_by_validation() {
    let c = build(&spec(InstanceKind::GroupDoubleGroupoid { order: 2 }));
    let base = decorated_horizontalization(&c).unwrap();
    // the only monoid endomorphisms of Z/2 are the identity and the zero map
    let identity = Pi2Indexing::from_fn(Direction::Opindexing, base.clone(), |_, x| x).unwrap();
    let zero = Pi2Indexing::from_fn(Direction::Opindexing, base.clone(), |f, x| {
        if base.bstar.is_identity(f) {
            x
        } else {
            ElemId(0)
        }
    })
    .unwrap();
    assert!(validate_indexing(&identity).is_empty());
    assert!(!validate_indexing(&zero).is_empty());
    assert!(check_induces(&c, &identity).unwrap().is_empty());
    let induced = induce_opindexing(&c).unwrap();
    assert_eq!(induced.maps, identity.maps);
    let induced = induce_indexing(&c).unwrap();
    assert_eq!(induced.maps, identity.maps);
}

/// Φ_f(φ) by scanning every square of π₂ at the other end.
#[test]
fn induced_maps_match_the_factor_scan() {
    for (name, c, phi) in inducing_suite() {
        let v = c.vertical();
        for f in v.morphism_ids() {
            let u = c.unit_square(f);
            let (from, to) = (v.target(f), v.source(f));
            let pi_from = pi2_monoid(&c, from).unwrap();
            let pi_to = pi2_monoid(&c, to).unwrap();
            for (x, &sq) in pi_from.elements.iter().enumerate() {
                let lhs = c.vcomp_entry(u, sq);
                let hits: Vec<usize> = (0..pi_to.size())
                    .filter(|&y| c.vcomp_entry(pi_to.elements[y], u) == lhs)
                    .collect();
                assert_eq!(hits.len(), 1, "{name}: {f}, {x}");
                assert_eq!(phi.maps[f.index()][x], ElemId::from(hits[0]), "{name}");
            }
        }
    }
}

#[test]
fn rel_star_and_hat_indexings_are_trivial() {
    let c = build(&rel_star(2));
    let phi = induce_opindexing(&c).unwrap();
    assert!(phi.monoids.iter().all(|m| m.is_trivial()));
    let hat = build(&dblcat::instances::spec::InstanceSpec::restricted(
        InstanceKind::Rel { n: 2 },
        dblcat::instances::spec::RestrictionKind::Hat,
    ));
    let phi = induce_indexing(&hat).unwrap();
    assert!(phi.monoids.iter().all(|m| m.is_trivial()));
}

// --- crossed products ----------------------------------------------------------------------------

#[test]
fn crossed_product_square_counts_match_orbit_counting() {
    for (name, c, phi) in inducing_suite() {
        let q = build_crossed_product(&phi, BUDGET).unwrap();
        let (triples, mut classes) = orbit_oracle(&phi);
        let globular = phi.base.b.two_cell_count();
        assert_eq!(q.double.square_count(), globular + classes.count(), "{name}");
        for (i, &s) in triples.iter().enumerate() {
            for (j, &t) in triples.iter().enumerate().skip(i + 1) {
                let same = classes.find(i) == classes.find(j);
                assert_eq!(q.same_class(s, t).unwrap(), same, "{name}: {s:?} {t:?}");
            }
        }
        let _ = c;
    }
    // the Z/2 groupoid: 4 triples in 2 orbits of size 2
    let c = build(&spec(InstanceKind::GroupDoubleGroupoid { order: 2 }));
    let phi = induce_opindexing(&c).unwrap();
    let (triples, mut classes) = orbit_oracle(&phi);
    assert_eq!((triples.len(), classes.count()), (4, 2));
}

#[test]
fn nontrivial_nu_relates_distinct_z2_triples() {
    let c = build(&spec(InstanceKind::GroupDoubleGroupoid { order: 2 }));
    let phi = induce_opindexing(&c).unwrap();
    let triples = dblcat::crossprod::all_triples(&phi);
    let mut found = false;
    for &s in &triples {
        for &t in &triples {
            if s != t && cp_boundary(&phi, s).unwrap() == cp_boundary(&phi, t).unwrap() {
                if let Some(nu) = dblcat::crossprod::cp_equal(&phi, s, t).unwrap() {
                    assert_ne!(nu, phi.monoids[0].presentation.unit());
                    found = true;
                }
            }
        }
    }
    assert!(found);
}

#[test]
fn crossed_product_hcomp_on_box_matches_pointwise() {
    let cat = FiniteCategory::chain(2);
    let c = build_commuting_squares(&cat).unwrap();
    let base = decorated_horizontalization(&c).unwrap();
    let phi = Pi2Indexing::trivial(Direction::Opindexing, base).unwrap();
    let q = build_crossed_product(&phi, BUDGET).unwrap();
    assert!(validate_double_category(&q.double).is_empty());
    let squares: Vec<CpSquare> = q.representatives.clone();
    let b = &phi.base.b;
    let mor = |h: HorId| MorId(h.0);
    for &x in &squares {
        for &y in &squares {
            let (bx, by) = (cp_boundary(&phi, x).unwrap(), cp_boundary(&phi, y).unwrap());
            if bx.right != by.left {
                continue;
            }
            let r = cp_hcomp(&phi, x, y).unwrap();
            let br = cp_boundary(&phi, r).unwrap();
            // edges compose in the underlying category
            assert_eq!(mor(br.top), cat.compose(mor(by.top), mor(bx.top)).unwrap());
            assert_eq!(mor(br.bottom), cat.compose(mor(by.bottom), mor(bx.bottom)).unwrap());
            if let (CpSquare::Triple { down: d1, up: u1, .. }, CpSquare::Triple { down: d2, up: u2, .. }, CpSquare::Triple { down, up, .. }) = (x, y, r) {
                assert_eq!(down, b.horizontal(d1, d2).unwrap());
                assert_eq!(up, b.horizontal(u1, u2).unwrap());
            }
        }
    }
}

#[test]
fn crossed_product_vcomp_is_associative_up_to_orbits() {
    for (name, _, phi) in inducing_suite().into_iter().filter(|(n, _, _)| n.contains("Z/")) {
        let q = build_crossed_product(&phi, BUDGET).unwrap();
        let (triples, mut classes) = orbit_oracle(&phi);
        let index: BTreeMap<CpSquare, usize> = triples.iter().enumerate().map(|(i, &t)| (t, i)).collect();
        let mut all: Vec<CpSquare> = triples.clone();
        all.extend(phi.base.b.two_cell_ids().map(CpSquare::Globular));
        let mut same = |a: CpSquare, b: CpSquare| match (index.get(&a), index.get(&b)) {
            (Some(&i), Some(&j)) => classes.find(i) == classes.find(j),
            _ => a == b,
        };
        let composable = |x: CpSquare, y: CpSquare| cp_boundary(&phi, x).unwrap().bottom == cp_boundary(&phi, y).unwrap().top;
        for &x in &all {
            for &y in all.iter().filter(|&&y| composable(x, y)) {
                let xy = cp_vcomp(&phi, x, y).unwrap();
                for &z in all.iter().filter(|&&z| composable(y, z)) {
                    let l = cp_vcomp(&phi, xy, z).unwrap();
                    let r = cp_vcomp(&phi, x, cp_vcomp(&phi, y, z).unwrap()).unwrap();
                    assert!(same(l, r), "{name}: {x:?} {y:?} {z:?}");
                }
            }
        }
        let _ = q;
    }
}

// --- evaluation functor --------------------------------------------------------------------------

#[test]
fn rel_star_evaluation_is_the_boundary_map() {
    let c = build(&rel_star(2));
    let phi = induce_opindexing(&c).unwrap();
    let q = build_crossed_product(&phi, BUDGET).unwrap();
    let bang = evaluation_functor(&q, &c).unwrap();
    for s in q.double.square_ids() {
        let want: Vec<SqId> = c.square_ids().filter(|&t| c.boundary_of(t) == q.double.boundary_of(s)).collect();
        assert_eq!(want, vec![bang.square(s)]);
    }
    assert_eq!(check_eval_injective(&bang), None);
}

#[test]
fn groupoid_evaluation_is_bijective_onto_gamma() {
    for order in [2, 3] {
        let c = build(&spec(InstanceKind::GroupDoubleGroupoid { order }));
        let phi = induce_opindexing(&c).unwrap();
        let q = build_crossed_product(&phi, BUDGET).unwrap();
        let bang = evaluation_functor(&q, &c).unwrap();
        let image: BTreeSet<SqId> = bang.squares.iter().copied().collect();
        assert_eq!(image.len(), q.double.square_count());
        assert_eq!(image, gamma_oracle(&c));
    }
}

#[test]
fn gamma_matches_the_fixpoint_oracle() {
    for (name, c) in suite() {
        let got: BTreeSet<SqId> = globularly_generated_piece(&c).squares.into_iter().collect();
        assert_eq!(got, gamma_oracle(&c), "{name}");
    }
}

// --- spans -----------------------------------------------------------------------------------------

#[test]
fn span_squares_are_exactly_the_commuting_apex_maps() {
    let s = build_span(&[1, 2], 1, FrameClass::Bijective, BUDGET).unwrap();
    let c = &s.double;
    let sizes = &s.frames.sizes;
    let legs = |h: HorId| {
        let cell = &s.cells[h.index()];
        let cols = sizes[cell.target.index()];
        let mut out = Vec::new();
        for (k, &m) in cell.mult.iter().enumerate() {
            for _ in 0..m {
                out.push((k / cols, k % cols));
            }
        }
        out
    };
    let mut per_boundary: BTreeMap<Boundary, usize> = BTreeMap::new();
    for sq in c.square_ids() {
        let b = c.boundary_of(sq);
        let (top, bottom) = (legs(b.top), legs(b.bottom));
        let (f, g) = (s.frames.function(b.left), s.frames.function(b.right));
        let map = &s.maps[sq.index()];
        assert_eq!(map.len(), top.len());
        for (p, &(i, j)) in top.iter().enumerate() {
            assert_eq!(bottom[map[p] as usize], (f[i] as usize, g[j] as usize));
        }
        *per_boundary.entry(b).or_default() += 1;
    }
    // every commuting apex map appears once
    for (b, n) in per_boundary {
        let (top, bottom) = (legs(b.top), legs(b.bottom));
        let (f, g) = (s.frames.function(b.left), s.frames.function(b.right));
        let count = all_functions(top.len(), bottom.len())
            .into_iter()
            .filter(|m| top.iter().enumerate().all(|(p, &(i, j))| bottom[m[p]] == (f[i] as usize, g[j] as usize)))
            .count();
        assert_eq!(n, count, "{b:?}");
    }
    for (x, y, r) in c.vcomp_entries() {
        let want: Vec<u32> = s.maps[x.index()].iter().map(|&p| s.maps[y.index()][p as usize]).collect();
        assert_eq!(s.maps[r.index()], want);
    }
}

// --- witnesses -------------------------------------------------------------------------------------

#[test]
fn witness_search_agrees_with_pairwise_scan() {
    for (name, c) in suite() {
        let Ok(found) = noninjectivity_search(&c, BUDGET) else { continue };
        let q = &found.crossed;
        let reps = &q.representatives;
        let mut pairs = Vec::new();
        for i in 0..reps.len() {
            for j in i + 1..reps.len() {
                if found.bang.squares[i] == found.bang.squares[j] {
                    pairs.push((i, j));
                }
            }
        }
        assert_eq!(found.witness.is_some(), !pairs.is_empty(), "{name}");
        assert_eq!(check_eval_injective(&found.bang).is_none(), pairs.is_empty(), "{name}");
        if let Some(w) = found.witness {
            assert_ne!(w.first_class, w.second_class);
            assert_eq!(found.bang.square(w.first_class), found.bang.square(w.second_class));
        }
    }
}
