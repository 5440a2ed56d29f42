//! Reflections of `Cat` onto posets and acyclic categories.

use std::sync::Arc;

use super::{present, CatFunctor, FinCat, Mor, Morphism, Obj, Presentation, Relation};

/// Strongly connected components of the "morphism exists" preorder, numbered
/// in order of first appearance.
fn components(c: &FinCat) -> (Vec<usize>, Vec<Vec<Obj>>) {
    let n = c.object_count();
    let mut class = vec![usize::MAX; n];
    let mut members = Vec::new();
    for a in 0..n {
        if class[a] != usize::MAX {
            continue;
        }
        let k = members.len();
        let mut m = Vec::new();
        for b in a..n {
            if class[b] == usize::MAX && c.le(a, b) && c.le(b, a) {
                class[b] = k;
                m.push(b);
            }
        }
        members.push(m);
    }
    (class, members)
}

fn class_names(c: &FinCat, members: &[Vec<Obj>]) -> Vec<String> {
    members
        .iter()
        .map(|m| {
            let names: Vec<&str> = m.iter().map(|&o| c.object_name(o)).collect();
            names.join("~")
        })
        .collect()
}

/// The poset reflection `p_P`: objects up to mutual reachability, ordered by
/// reachability, with the quotient functor.
pub fn posetify(c: &Arc<FinCat>) -> (Arc<FinCat>, CatFunctor) {
    if c.is_poset() {
        return (c.clone(), CatFunctor::identity(c.clone()));
    }
    let (class, members) = components(c);
    let rep: Vec<Obj> = members.iter().map(|m| m[0]).collect();
    let p = Arc::new(FinCat::from_order(class_names(c, &members), |a, b| c.le(rep[a], rep[b])));
    let obj_map: Vec<Obj> = class.clone();
    let mor_map: Vec<Mor> = (0..c.morphism_count()).map(|m| p.hom(class[c.src(m)], class[c.tgt(m)])[0]).collect();
    let q = CatFunctor::new_unchecked(c.clone(), p.clone(), obj_map, mor_map);
    (p, q)
}

/// The acyclic reflection `p_A`.
///
/// Mutually reachable objects are identified and every morphism inside such a
/// class is forced to an identity; the quotient is recomputed from the
/// resulting presentation and the process repeats until the result is
/// acyclic.
pub fn acyclify(c: &Arc<FinCat>) -> (Arc<FinCat>, CatFunctor) {
    let mut current = c.clone();
    let mut quotient = CatFunctor::identity(c.clone());
    while !current.classify().is_acyclic {
        let (next, step) = acyclify_step(&current);
        quotient = quotient.then(&step).expect("composable quotients");
        current = next;
    }
    (current, quotient)
}

fn acyclify_step(c: &Arc<FinCat>) -> (Arc<FinCat>, CatFunctor) {
    let (class, members) = components(c);
    let mut generators = Vec::new();
    let mut gen_of = vec![usize::MAX; c.morphism_count()];
    for m in 0..c.morphism_count() {
        let (a, b) = (class[c.src(m)], class[c.tgt(m)]);
        if a != b {
            gen_of[m] = generators.len();
            generators.push(Morphism { name: c.morphism(m).name.clone(), src: a, tgt: b });
        }
    }
    let word = |m: Mor| -> Vec<usize> {
        if gen_of[m] == usize::MAX {
            vec![]
        } else {
            vec![gen_of[m]]
        }
    };
    let mut relations = Vec::new();
    for f in 0..c.morphism_count() {
        for &g in c.homs_from(c.tgt(f)) {
            let mut lhs = word(f);
            lhs.extend(word(g));
            relations.push(Relation { src: class[c.src(f)], lhs, rhs: word(c.comp(g, f)) });
        }
    }
    let presentation = Presentation { objects: class_names(c, &members), generators, relations };
    // the quotient has at most as many morphisms as `c`
    let presented = present(&presentation, c.morphism_count() + 1).expect("quotient of a finite category is finite");
    let mor_map: Vec<Mor> = (0..c.morphism_count()).map(|m| presented.eval(class[c.src(m)], &word(m))).collect();
    let target = Arc::new(presented.cat);
    let q = CatFunctor::new_unchecked(c.clone(), target.clone(), class, mor_map);
    (target, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{for_each_functor, is_isomorphic, Morphism};
    use std::ops::ControlFlow;

    fn parallel_pair() -> FinCat {
        FinCat::from_triples(
            vec!["a".into(), "b".into()],
            vec![
                Morphism { name: "1a".into(), src: 0, tgt: 0 },
                Morphism { name: "1b".into(), src: 1, tgt: 1 },
                Morphism { name: "u".into(), src: 0, tgt: 1 },
                Morphism { name: "v".into(), src: 0, tgt: 1 },
            ],
            vec![0, 1],
            &[(0, 0, 0), (1, 1, 1), (2, 0, 2), (3, 0, 3), (1, 2, 2), (1, 3, 3)],
        )
        .unwrap()
    }

    fn idempotent() -> FinCat {
        FinCat::from_triples(
            vec!["x".into()],
            vec![Morphism { name: "id".into(), src: 0, tgt: 0 }, Morphism { name: "e".into(), src: 0, tgt: 0 }],
            vec![0],
            &[(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 1)],
        )
        .unwrap()
    }

    #[test]
    fn posetify_fixes_posets() {
        let p = Arc::new(FinCat::chain(2));
        let (q, f) = posetify(&p);
        assert_eq!(*q, *p);
        assert!(f.is_isomorphism());
    }

    #[test]
    fn posetify_parallel_pair() {
        let (q, _) = posetify(&Arc::new(parallel_pair()));
        assert!(is_isomorphic(&q, &FinCat::chain(1)));
    }

    #[test]
    fn posetify_group() {
        let (q, _) = posetify(&Arc::new(FinCat::cyclic_group(2)));
        assert!(is_isomorphic(&q, &FinCat::terminal()));
    }

    #[test]
    fn acyclify_examples() {
        let pp = Arc::new(parallel_pair());
        let (q, f) = acyclify(&pp);
        assert_eq!(*q, *pp);
        assert!(f.is_isomorphism());
        for c in [FinCat::cyclic_group(2), idempotent()] {
            let (q, _) = acyclify(&Arc::new(c));
            assert!(is_isomorphic(&q, &FinCat::terminal()));
        }
    }

    #[test]
    fn acyclify_keeps_parallel_structure_outside_cycles() {
        // a ⇄ b (inverse isos) with two arrows b → c
        let c = FinCat::from_triples(
            vec!["a".into(), "b".into(), "c".into()],
            vec![
                Morphism { name: "1a".into(), src: 0, tgt: 0 },
                Morphism { name: "1b".into(), src: 1, tgt: 1 },
                Morphism { name: "1c".into(), src: 2, tgt: 2 },
                Morphism { name: "i".into(), src: 0, tgt: 1 },
                Morphism { name: "j".into(), src: 1, tgt: 0 },
                Morphism { name: "u".into(), src: 1, tgt: 2 },
                Morphism { name: "v".into(), src: 1, tgt: 2 },
                Morphism { name: "ui".into(), src: 0, tgt: 2 },
                Morphism { name: "vi".into(), src: 0, tgt: 2 },
            ],
            vec![0, 1, 2],
            &[
                (0, 0, 0),
                (1, 1, 1),
                (2, 2, 2),
                (3, 0, 3),
                (1, 3, 3),
                (4, 1, 4),
                (0, 4, 4),
                (4, 3, 0),
                (3, 4, 1),
                (5, 1, 5),
                (2, 5, 5),
                (6, 1, 6),
                (2, 6, 6),
                (5, 3, 7),
                (6, 3, 8),
                (7, 4, 5),
                (8, 4, 6),
                (7, 0, 7),
                (8, 0, 8),
                (2, 7, 7),
                (2, 8, 8),
            ],
        )
        .unwrap();
        let (q, _) = acyclify(&Arc::new(c));
        assert!(is_isomorphic(&q, &parallel_pair()));
    }

    /// Every functor into an acyclic (resp. poset) target factors uniquely
    /// through the reflection.
    fn check_universal(c: &Arc<FinCat>, reflect: fn(&Arc<FinCat>) -> (Arc<FinCat>, CatFunctor), targets: &[FinCat]) {
        let (r, q) = reflect(c);
        for t in targets {
            let mut count_c = 0;
            for_each_functor(c, t, 1 << 20, |_, _| {
                count_c += 1;
                ControlFlow::Continue(())
            })
            .unwrap();
            // factorizations correspond to functors out of r; composing with q must be injective
            let mut seen = std::collections::HashSet::new();
            for_each_functor(&r, t, 1 << 20, |_, m| {
                let composite: Vec<Mor> = q.mor_map().iter().map(|&x| m[x]).collect();
                assert!(seen.insert(composite), "factorization not unique");
                ControlFlow::Continue(())
            })
            .unwrap();
            assert_eq!(seen.len(), count_c, "not every functor factors");
        }
    }

    #[test]
    fn reflections_are_universal() {
        let posets = [FinCat::chain(1), FinCat::chain(2), FinCat::discrete(["p", "q"])];
        let acyclic = [FinCat::chain(1), parallel_pair(), FinCat::terminal()];
        for c in [FinCat::cyclic_group(2), idempotent(), parallel_pair(), FinCat::chain(2)] {
            let c = Arc::new(c);
            check_universal(&c, posetify, &posets);
            check_universal(&c, acyclify, &acyclic);
        }
    }

    #[test]
    fn reflections_are_idempotent() {
        for c in [FinCat::cyclic_group(3), idempotent(), parallel_pair()] {
            let c = Arc::new(c);
            let (p, _) = posetify(&c);
            assert!(is_isomorphic(&posetify(&p).0, &p));
            let (a, _) = acyclify(&c);
            assert!(is_isomorphic(&acyclify(&a).0, &a));
        }
    }
}
