//! A bounded check of the pushout universal property.
//!
//! A cocone `B → D ← C` over a span `B ← A → C` is a pushout when, for every
//! category `T`, composing with the cocone is a bijection from functors
//! `D → T` to pairs `(β: B → T, γ: C → T)` with `β ∘ i = γ ∘ F`. Here `T`
//! ranges over every category (up to isomorphism) with at most `bound`
//! objects and at most `bound` non-identity morphisms, so a pass is a finite
//! certificate rather than a proof.

use std::collections::HashMap;
use std::ops::ControlFlow;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fincat::{for_each_functor, identity_name, is_isomorphic, CatFunctor, FinCat, Mor, Morphism};

/// Largest bound the test family can be enumerated for.
pub const MAX_ORACLE_BOUND: usize = 3;

/// Outcome of [`pushout_oracle`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    pub passed: bool,
    pub test_categories: usize,
    /// Compatible pairs `(β, γ)` summed over all test categories.
    pub compatible_pairs: usize,
    pub failure: Option<String>,
}

/// Every category with at most `bound` objects and at most `bound`
/// non-identity morphisms, one per isomorphism class. Cached per bound.
pub fn test_categories(bound: usize) -> Result<Arc<Vec<Arc<FinCat>>>> {
    if bound > MAX_ORACLE_BOUND {
        return Err(Error::SizeLimitExceeded { required: bound as u128, budget: MAX_ORACLE_BOUND as u128 });
    }
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<Arc<FinCat>>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().expect("cache lock").get(&bound) {
        return Ok(hit.clone());
    }
    let mut out: Vec<Arc<FinCat>> = Vec::new();
    for n in 0..=bound {
        for k in 0..=bound {
            let mut bucket: Vec<Arc<FinCat>> = Vec::new();
            for edges in canonical_graphs(n, k) {
                for cat in categories_on_graph(n, &edges) {
                    if !bucket.iter().any(|c| is_isomorphic(c, &cat)) {
                        bucket.push(Arc::new(cat));
                    }
                }
            }
            out.extend(bucket);
        }
    }
    let out = Arc::new(out);
    cache.lock().expect("cache lock").insert(bound, out.clone());
    Ok(out)
}

/// Multisets of `k` edges on `n` vertices, one per orbit under relabelling.
fn canonical_graphs(n: usize, k: usize) -> Vec<Vec<(usize, usize)>> {
    let perms = permutations(n);
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(
        n: usize,
        k: usize,
        from: usize,
        cur: &mut Vec<usize>,
        perms: &[Vec<usize>],
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if cur.len() == k {
            let edges: Vec<(usize, usize)> = cur.iter().map(|&e| (e / n, e % n)).collect();
            let minimal = perms.iter().all(|p| {
                let mut img: Vec<(usize, usize)> = edges.iter().map(|&(s, t)| (p[s], p[t])).collect();
                img.sort_unstable();
                img >= edges
            });
            if minimal {
                out.push(edges);
            }
            return;
        }
        for e in from..n * n {
            cur.push(e);
            go(n, k, e, cur, perms, out);
            cur.pop();
        }
    }
    if n == 0 {
        if k == 0 {
            out.push(vec![]);
        }
        return out;
    }
    go(n, k, 0, &mut cur, &perms, &mut out);
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Every associative composition on the graph with identities `0..n` and
/// non-identity edges `n..n+k`.
fn categories_on_graph(n: usize, edges: &[(usize, usize)]) -> Vec<FinCat> {
    let k = edges.len();
    let total = n + k;
    let src = |m: usize| if m < n { m } else { edges[m - n].0 };
    let tgt = |m: usize| if m < n { m } else { edges[m - n].1 };
    let hom: Vec<Vec<Mor>> =
        (0..n * n).map(|st| (0..total).filter(|&m| src(m) == st / n && tgt(m) == st % n).collect()).collect();
    // composable pairs (g, f) of non-identities
    let pairs: Vec<(Mor, Mor)> =
        (n..total).flat_map(|f| (n..total).filter(move |&g| tgt(f) == src(g)).map(move |g| (g, f))).collect();
    if pairs.iter().any(|&(g, f)| hom[src(f) * n + tgt(g)].is_empty()) {
        return vec![];
    }
    let mut table = vec![usize::MAX; total * total];
    let comp = |table: &[usize], g: Mor, f: Mor| -> Option<Mor> {
        if f < n {
            Some(g)
        } else if g < n {
            Some(f)
        } else {
            let v = table[g * total + f];
            (v != usize::MAX).then_some(v)
        }
    };
    let associative_so_far = |table: &[usize]| {
        for &(g, f) in &pairs {
            let Some(gf) = comp(table, g, f) else {
                continue;
            };
            for h in n..total {
                if src(h) != tgt(g) {
                    continue;
                }
                let (Some(hg), Some(h_gf)) = (comp(table, h, g), comp(table, h, gf)) else {
                    continue;
                };
                if let Some(hg_f) = comp(table, hg, f) {
                    if hg_f != h_gf {
                        return false;
                    }
                }
            }
        }
        true
    };
    let mut out = Vec::new();
    fn search(
        p: usize,
        pairs: &[(Mor, Mor)],
        cands: &[&[Mor]],
        table: &mut Vec<usize>,
        total: usize,
        ok: &dyn Fn(&[usize]) -> bool,
        done: &mut dyn FnMut(&[usize]),
    ) {
        if p == pairs.len() {
            done(table);
            return;
        }
        let (g, f) = pairs[p];
        for &c in cands[p] {
            table[g * total + f] = c;
            if ok(table) {
                search(p + 1, pairs, cands, table, total, ok, done);
            }
        }
        table[g * total + f] = usize::MAX;
    }
    let cands: Vec<&[Mor]> = pairs.iter().map(|&(g, f)| hom[src(f) * n + tgt(g)].as_slice()).collect();
    let objects: Vec<String> = (0..n).map(|o| format!("t{o}")).collect();
    let morphisms: Vec<Morphism> = (0..total)
        .map(|m| Morphism {
            name: if m < n { identity_name(&objects[m]) } else { format!("e{}", m - n) },
            src: src(m),
            tgt: tgt(m),
        })
        .collect();
    let mut done = |table: &[usize]| {
        let built = FinCat::from_fn(objects.clone(), morphisms.clone(), (0..n).collect(), |g, f| comp(table, g, f));
        if let Ok(c) = built {
            out.push(c);
        }
    };
    search(0, &pairs, &cands, &mut table, total, &associative_so_far, &mut done);
    out
}

/// Packs a restricted morphism map into base-`radix` digits, as many per
/// word as fit without overflow.
fn pack(map: &[Mor], restrict: &[Mor], radix: usize) -> Vec<u128> {
    let radix = radix.max(2) as u128;
    let per_word = (127 / (128 - radix.leading_zeros())).max(1) as usize;
    restrict.chunks(per_word).map(|c| c.iter().fold(0u128, |acc, &x| acc * radix + map[x] as u128)).collect()
}

/// Counts functors `source → target` by the key of their restriction.
fn restricted_counts(
    source: &FinCat,
    target: &FinCat,
    restrict: &[Mor],
    budget: u128,
) -> Result<HashMap<Vec<u128>, usize>> {
    let radix = target.morphism_count();
    let mut counts = HashMap::new();
    for_each_functor(source, target, budget, |_, m| {
        *counts.entry(pack(m, restrict, radix)).or_insert(0) += 1;
        ControlFlow::Continue(())
    })?;
    Ok(counts)
}

struct Candidate<'a> {
    i: &'a CatFunctor,
    f: &'a CatFunctor,
    d: &'a FinCat,
    /// Morphisms of `D` hit by `j_B` followed by those hit by `j_C`.
    legs: Vec<Mor>,
    /// Every morphism of `D` lies in the image of a leg, so a functor out of
    /// `D` is determined by its restriction and uniqueness is automatic.
    jointly_surjective: bool,
}

impl Candidate<'_> {
    fn check(&self, t: &FinCat, budget: u128) -> Result<(usize, Option<String>)> {
        // compatible pairs: β ↦ β ∘ i and γ ↦ γ ∘ F must agree
        let betas = restricted_counts(self.i.target(), t, self.i.mor_map(), budget)?;
        let gammas = restricted_counts(self.f.target(), t, self.f.mor_map(), budget)?;
        let pairs: usize = betas.iter().map(|(k, nb)| nb * gammas.get(k).copied().unwrap_or(0)).sum();
        let mut deltas = 0usize;
        let mut unique = true;
        if self.jointly_surjective {
            for_each_functor(self.d, t, budget, |_, _| {
                deltas += 1;
                ControlFlow::Continue(())
            })?;
        } else {
            let radix = t.morphism_count();
            let mut seen: HashMap<Vec<u128>, usize> = HashMap::new();
            for_each_functor(self.d, t, budget, |_, m| {
                let n = seen.entry(pack(m, &self.legs, radix)).or_insert(0);
                *n += 1;
                unique &= *n == 1;
                deltas += 1;
                ControlFlow::Continue(())
            })?;
        }
        let failure = if !unique {
            Some(format!("factorization into a category with {} objects is not unique", t.object_count()))
        } else if deltas != pairs {
            Some(format!(
                "{pairs} compatible pairs but {deltas} functors out of the candidate, into a category with {} objects",
                t.object_count()
            ))
        } else {
            None
        };
        Ok((pairs, failure))
    }
}

/// Tests the cocone `(j_b, j_c)` on `d` against every test category of size
/// at most `bound`.
pub fn pushout_oracle(
    span: (&CatFunctor, &CatFunctor),
    candidate: (&FinCat, &CatFunctor, &CatFunctor),
    bound: usize,
    budget: u128,
) -> Result<OracleReport> {
    let (i, f) = span;
    let (d, j_b, j_c) = candidate;
    if **i.source() != **f.source() || **j_b.source() != **i.target() || **j_c.source() != **f.target() {
        return Err(Error::Malformed("candidate cocone does not match the span".into()));
    }
    if **j_b.target() != *d || **j_c.target() != *d {
        return Err(Error::Malformed("cocone legs do not land in the candidate".into()));
    }
    let left = i.then(j_b)?;
    let right = f.then(j_c)?;
    if left.mor_map() != right.mor_map() {
        return Err(Error::Malformed("cocone does not commute".into()));
    }
    let family = test_categories(bound)?;
    let mut legs: Vec<Mor> = j_b.mor_map().to_vec();
    legs.extend_from_slice(j_c.mor_map());
    let mut hit = vec![false; d.morphism_count()];
    for &m in &legs {
        hit[m] = true;
    }
    let jointly_surjective = hit.iter().all(|&h| h);
    let cand = Candidate { i, f, d, legs, jointly_surjective };
    let results: Vec<Result<(usize, Option<String>)>> = family.par_iter().map(|t| cand.check(t, budget)).collect();
    let mut report = OracleReport { passed: true, test_categories: family.len(), compatible_pairs: 0, failure: None };
    for r in results {
        let (pairs, failure) = r?;
        report.compatible_pairs += pairs;
        if report.failure.is_none() {
            if let Some(msg) = failure {
                report.passed = false;
                report.failure = Some(msg);
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dwyer::{dwyer_pushout, find_dwyer_witness, full_inclusion};

    #[test]
    fn small_family_counts() {
        // bound 1: the empty category, the point, and the two monoids of order 2
        let fam = test_categories(1).unwrap();
        assert_eq!(fam.len(), 4);
        // monoids of order ≤ 4 up to isomorphism: 1 + 2 + 7 + 35
        let fam = test_categories(3).unwrap();
        let monoids = fam.iter().filter(|c| c.object_count() == 1).count();
        assert_eq!(monoids, 1 + 2 + 7 + 35);
    }

    #[test]
    fn family_is_free_of_duplicates() {
        let fam = test_categories(2).unwrap();
        for (x, c) in fam.iter().enumerate() {
            for d in &fam[x + 1..] {
                assert!(!is_isomorphic(c, d));
            }
        }
    }

    fn arrow_span() -> (CatFunctor, CatFunctor) {
        let b = Arc::new(FinCat::chain(1));
        let i = full_inclusion(&b, &[0]);
        let f = CatFunctor::new(i.source().clone(), Arc::new(FinCat::terminal()), vec![0], vec![0]).unwrap();
        (i, f)
    }

    #[test]
    fn accepts_the_formula() {
        let (i, f) = arrow_span();
        let w = find_dwyer_witness(&i).unwrap().unwrap();
        let p = dwyer_pushout(&w, &f).unwrap();
        let r = pushout_oracle((&i, &f), (&p.cat, &p.from_b, &p.from_c), 3, 1 << 20).unwrap();
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn rejects_a_spurious_object() {
        let (i, f) = arrow_span();
        // D = {c < 1} ⊔ {x}
        let d = Arc::new(FinCat::poset(vec!["c".into(), "1".into(), "x".into()], &[(0, 1)]).unwrap());
        let j_b = CatFunctor::from_morphisms(
            i.target().clone(),
            d.clone(),
            vec![d.identity(0), d.hom(0, 1)[0], d.identity(1)],
        )
        .unwrap();
        let j_c = CatFunctor::new(f.target().clone(), d.clone(), vec![0], vec![d.identity(0)]).unwrap();
        let r = pushout_oracle((&i, &f), (&d, &j_b, &j_c), 3, 1 << 20).unwrap();
        assert!(!r.passed);
    }

    #[test]
    fn trivial_span() {
        let a = Arc::new(FinCat::chain(1));
        let id = CatFunctor::identity(a.clone());
        let r = pushout_oracle((&id, &id), (&a, &id, &id), 3, 1 << 20).unwrap();
        assert!(r.passed);
    }

    #[test]
    fn bound_is_capped() {
        assert!(matches!(test_categories(4), Err(Error::SizeLimitExceeded { .. })));
    }
}
