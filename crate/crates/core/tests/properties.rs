//! Randomized invariants over small categories, simplicial sets, diagrams and
//! group actions. Every law is checked against a direct recomputation.

use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;
use proptest::sample::select;

use workbench::diagram::{colim_set, is_orbit, SetDiagram};
use workbench::dwyer::{discrete_product_witness, dwyer_pushout, find_dwyer_witness, full_inclusion, test_categories};
use workbench::equivariant::{orbit_diagram, semidirect, Subgroup};
use workbench::fincat::{
    acyclify, functors, internal_hom, is_isomorphic, posetify, product, CatFunctor, FinCat, FunctorData,
};
use workbench::harness::corpus::group_actions;
use workbench::harness::{run_suite, Corpus};
use workbench::simplicial::{categorify, homology, nerve, ordered_complex, subdivide, FinSSet};

const BUDGET: u128 = 1 << 20;

fn small_categories() -> Vec<Arc<FinCat>> {
    test_categories(2).unwrap().iter().cloned().collect()
}

/// A random poset on up to `max` elements: the transitive closure of
/// random pairs `a < b` with `a < b` as indices.
fn poset(max: usize) -> impl Strategy<Value = Arc<FinCat>> {
    (1..=max)
        .prop_flat_map(|n| {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
            let count = pairs.len();
            (Just(n), Just(pairs), proptest::collection::vec(any::<bool>(), count))
        })
        .prop_map(|(n, pairs, keep)| {
            let mut le = vec![vec![false; n]; n];
            for (k, &(a, b)) in pairs.iter().enumerate() {
                le[a][b] = keep[k];
            }
            for k in 0..n {
                for a in 0..n {
                    for b in 0..n {
                        le[a][b] |= le[a][k] && le[k][b];
                    }
                }
            }
            let relation: Vec<(usize, usize)> = pairs.into_iter().filter(|&(a, b)| le[a][b]).collect();
            Arc::new(FinCat::poset((0..n).map(|i| i.to_string()).collect(), &relation).unwrap())
        })
}

/// Small categories of every class: enumerated ones and random posets.
fn category() -> impl Strategy<Value = Arc<FinCat>> {
    prop_oneof![select(small_categories()), poset(3)]
}

fn functor_from(c: &Arc<FinCat>, d: &Arc<FinCat>, data: FunctorData) -> CatFunctor {
    CatFunctor::new(c.clone(), d.clone(), data.obj_map, data.mor_map).unwrap()
}

/// `functors(target-of-q, t) → functors(source-of-q, t)` by precomposition is a bijection.
fn factors_uniquely(q: &CatFunctor, t: &Arc<FinCat>) -> bool {
    let through: Vec<FunctorData> = functors(q.target(), t, BUDGET).unwrap();
    let direct: BTreeSet<Vec<usize>> =
        functors(q.source(), t, BUDGET).unwrap().into_iter().map(|d| d.mor_map).collect();
    let images: BTreeSet<Vec<usize>> =
        through.into_iter().map(|d| q.then(&functor_from(q.target(), t, d)).unwrap().mor_map().to_vec()).collect();
    images == direct && direct.len() == functors(q.target(), t, BUDGET).unwrap().len()
}

/// A random down-closed set of simplices on `n ≤ 4` vertices, dimension ≤ 2.
fn complex() -> impl Strategy<Value = FinSSet> {
    (1usize..=4)
        .prop_flat_map(|n| {
            let tops = proptest::collection::vec(
                proptest::sample::subsequence((0..n).collect::<Vec<_>>(), 1..=n.min(3)),
                0..4,
            );
            (Just(n), tops)
        })
        .prop_map(|(n, tops)| {
            let mut all: BTreeSet<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
            for top in tops {
                for mask in 1u32..(1 << top.len()) {
                    all.insert(top.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect());
                }
            }
            let names: Vec<String> = (0..n).map(|v| format!("v{v}")).collect();
            ordered_complex(&names, &all.into_iter().collect::<Vec<_>>()).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn products_are_posets_exactly_when_both_factors_are(c in category(), d in category()) {
        let p = product(&c, &d);
        if c.object_count() == 0 || d.object_count() == 0 {
            // an empty factor makes the product empty, hence a poset
            prop_assert_eq!(p.cat.object_count(), 0);
            prop_assert!(p.cat.is_poset());
        } else {
            prop_assert_eq!(p.cat.classify().is_poset, c.is_poset() && d.is_poset());
            prop_assert_eq!(p.cat.classify().is_acyclic, c.classify().is_acyclic && d.classify().is_acyclic);
        }
    }

    #[test]
    fn posetify_is_a_reflection(c in category(), q in poset(3)) {
        let (p, quotient) = posetify(&c);
        prop_assert!(p.is_poset());
        prop_assert!(factors_uniquely(&quotient, &q));
    }

    #[test]
    fn acyclify_is_a_reflection(c in category(), t in select(small_categories())) {
        prop_assume!(t.classify().is_acyclic);
        let (a, quotient) = acyclify(&c);
        prop_assert!(a.classify().is_acyclic);
        prop_assert!(factors_uniquely(&quotient, &t));
    }

    #[test]
    fn reflections_are_idempotent(c in category()) {
        let (p, _) = posetify(&c);
        prop_assert!(is_isomorphic(&posetify(&p).0, &p));
        let (a, _) = acyclify(&c);
        prop_assert!(is_isomorphic(&acyclify(&a).0, &a));
    }

    #[test]
    fn internal_hom_is_functorial(
        c in select(small_categories()),
        d in select(small_categories()),
        e in select(small_categories()),
        seed in any::<u64>(),
    ) {
        let fs = functors(&d, &e, BUDGET).unwrap();
        let gs = functors(&e, &d, BUDGET).unwrap();
        prop_assume!(!fs.is_empty() && !gs.is_empty());
        let f = functor_from(&d, &e, fs[seed as usize % fs.len()].clone());
        let g = functor_from(&e, &d, gs[(seed >> 32) as usize % gs.len()].clone());
        let (hd, he) = (internal_hom(&c, &d, BUDGET).unwrap(), internal_hom(&c, &e, BUDGET).unwrap());
        let hf = hd.postcompose(&f, &he).unwrap();
        let hg = he.postcompose(&g, &hd).unwrap();
        let hgf = hd.postcompose(&f.then(&g).unwrap(), &hd).unwrap();
        let composite = hf.then(&hg).unwrap();
        prop_assert_eq!(composite.mor_map(), hgf.mor_map());
    }

    #[test]
    fn dwyer_pushouts_keep_c_and_its_class(b in poset(4), keep in any::<u32>(), c in select(small_categories()), seed in any::<u64>()) {
        // a random down-set of B
        let n = b.object_count();
        let chosen: Vec<usize> = (0..n).filter(|&o| keep >> o & 1 == 1).collect();
        let down: Vec<usize> = (0..n).filter(|&o| chosen.iter().any(|&x| b.le(o, x))).collect();
        let i = full_inclusion(&b, &down);
        // not every sieve is Dwyer: the retraction needs a largest element of A below each w
        let w = find_dwyer_witness(&i).unwrap();
        prop_assume!(w.is_some());
        let w = w.unwrap();
        let fs = functors(i.source(), &c, BUDGET).unwrap();
        prop_assume!(!fs.is_empty());
        let f = functor_from(i.source(), &c, fs[seed as usize % fs.len()].clone());
        let p = dwyer_pushout(&w, &f).unwrap();
        prop_assert!(p.from_c.is_monomorphism());
        prop_assert_eq!(p.cat.object_count(), c.object_count() + n - down.len());
        if c.is_poset() { prop_assert!(p.cat.is_poset()); }
        if c.classify().is_acyclic { prop_assert!(p.cat.classify().is_acyclic); }
    }

    #[test]
    fn products_with_sets_stay_dwyer(b in poset(3), keep in any::<u32>(), s in 1usize..=3) {
        let n = b.object_count();
        let down: Vec<usize> = (0..n).filter(|&o| (0..n).any(|x| keep >> x & 1 == 1 && b.le(o, x))).collect();
        let w = find_dwyer_witness(&full_inclusion(&b, &down)).unwrap();
        prop_assume!(w.is_some());
        let w = w.unwrap();
        let set = Arc::new(FinCat::discrete((0..s).map(|k| format!("s{k}"))));
        prop_assert!(discrete_product_witness(&set, &w).unwrap().verify().is_ok());
    }

    #[test]
    fn subdivision_preserves_homology(x in complex()) {
        let sd = subdivide(&x).unwrap();
        let dim = x.dimension().unwrap_or(0);
        prop_assert_eq!(homology(&sd, dim).unwrap(), homology(&x, dim).unwrap());
    }

    #[test]
    fn csd2_of_complexes_is_a_poset(x in complex()) {
        prop_assume!(x.dimension().unwrap_or(0) <= 1);
        let sd2 = subdivide(&subdivide(&x).unwrap()).unwrap();
        prop_assert!(categorify(&sd2, 1 << 16).unwrap().cat.is_poset());
    }

    #[test]
    fn posets_are_recovered_from_their_nerves(p in poset(4)) {
        let n = nerve(&p, p.object_count().max(2) - 1).unwrap();
        prop_assert!(n.is_complete());
        prop_assert!(is_isomorphic(&categorify(&n, 1 << 16).unwrap().cat, &p));
    }

    #[test]
    fn colimits_partition_the_elements(c in select(small_categories()), k in any::<usize>()) {
        let r = SetDiagram::representable(c.clone(), k % c.object_count().max(1));
        prop_assume!(c.object_count() > 0);
        let classes = colim_set(&r);
        prop_assert_eq!(classes.iter().map(Vec::len).sum::<usize>(), r.size());
        prop_assert!(is_orbit(&r));
    }

    #[test]
    fn orbit_diagrams_are_orbits(a in 0usize..15, k in any::<usize>(), pick in any::<usize>()) {
        let actions = group_actions();
        let action = &actions[a % actions.len()].action;
        let sd = semidirect(action).unwrap();
        let k = k % action.index().object_count();
        let subgroups: Vec<Subgroup> = Subgroup::all(action.group())
            .into_iter()
            .filter(|h| h.elements().iter().all(|&g| action.stabilizer(k).contains(g)))
            .collect();
        let h = &subgroups[pick % subgroups.len()];
        let o = orbit_diagram(&sd, k, h).unwrap();
        prop_assert!(is_orbit(&o));
        // H acts freely on the morphisms out of k
        let out_of_k: usize = (0..sd.cat.object_count()).map(|j| sd.cat.hom(k, j).len()).sum();
        prop_assert_eq!(o.size() * h.order(), out_of_k);
    }

    #[test]
    fn reports_are_reproducible(seed in any::<u64>()) {
        let c = Corpus::new(seed, 2);
        let a = run_suite("hom-change-no-orbit", &c).unwrap();
        let b = run_suite("hom-change-no-orbit", &c).unwrap();
        prop_assert_eq!(a.to_json(), b.to_json());
    }

    #[test]
    fn categories_round_trip_through_json(c in category()) {
        prop_assert_eq!(FinCat::from_json(&c.to_json()).unwrap(), (*c).clone());
    }
}

#[test]
fn trivial_groups_give_back_the_index() {
    for a in group_actions().into_iter().filter(|a| a.action.group().order() == 1) {
        let sd = semidirect(&a.action).unwrap();
        assert!(is_isomorphic(&sd.cat, a.action.index()), "{}", a.label);
    }
}
