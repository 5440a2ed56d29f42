use std::ops::ControlFlow;

use super::{FinCat, Mor, Obj};
use crate::error::{Error, Result};

/// Raw object and morphism maps of an enumerated functor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FunctorData {
    pub obj_map: Vec<Obj>,
    pub mor_map: Vec<Mor>,
}

/// Calls `visit` on every functor `source → target`.
///
/// The search is refused up front when the number of candidate object maps,
/// `|ob target|^|ob source|`, exceeds `budget`.
pub fn for_each_functor<F>(source: &FinCat, target: &FinCat, budget: u128, mut visit: F) -> Result<()>
where
    F: FnMut(&[Obj], &[Mor]) -> ControlFlow<()>,
{
    let required = (target.object_count() as u128).checked_pow(source.object_count() as u32).unwrap_or(u128::MAX);
    if required > budget {
        return Err(Error::SizeLimitExceeded { required, budget });
    }
    let mut search = Search::new(source, target);
    let _ = search.objects(0, &mut visit);
    Ok(())
}

/// All functors `source → target`.
pub fn functors(source: &FinCat, target: &FinCat, budget: u128) -> Result<Vec<FunctorData>> {
    let mut out = Vec::new();
    for_each_functor(source, target, budget, |o, m| {
        out.push(FunctorData { obj_map: o.to_vec(), mor_map: m.to_vec() });
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

struct Search<'a> {
    s: &'a FinCat,
    t: &'a FinCat,
    obj_map: Vec<Obj>,
    mor_map: Vec<Mor>,
    /// non-identity morphisms in assignment order
    order: Vec<Mor>,
    /// for each position in `order`, composites (g, f, gf) fully determined once it is assigned
    checks: Vec<Vec<(Mor, Mor, Mor)>>,
    /// for each object, the morphisms whose endpoints are all assigned once it is
    object_checks: Vec<Vec<Mor>>,
}

impl<'a> Search<'a> {
    fn new(s: &'a FinCat, t: &'a FinCat) -> Self {
        let order: Vec<Mor> = s.non_identities().collect();
        let mut pos = vec![usize::MAX; s.morphism_count()];
        for (i, &m) in order.iter().enumerate() {
            pos[m] = i;
        }
        let mut checks = vec![Vec::new(); order.len()];
        for f in 0..s.morphism_count() {
            for &g in s.homs_from(s.tgt(f)) {
                let gf = s.comp(g, f);
                let last = [pos[f], pos[g], pos[gf]].into_iter().filter(|&p| p != usize::MAX).max();
                if let Some(p) = last {
                    checks[p].push((g, f, gf));
                }
            }
        }
        let mut object_checks = vec![Vec::new(); s.object_count()];
        for m in s.non_identities() {
            object_checks[s.src(m).max(s.tgt(m))].push(m);
        }
        Search {
            s,
            t,
            obj_map: vec![usize::MAX; s.object_count()],
            mor_map: vec![usize::MAX; s.morphism_count()],
            order,
            checks,
            object_checks,
        }
    }

    fn objects<F>(&mut self, o: usize, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[Obj], &[Mor]) -> ControlFlow<()>,
    {
        if o == self.s.object_count() {
            for x in 0..self.s.object_count() {
                self.mor_map[self.s.identity(x)] = self.t.identity(self.obj_map[x]);
            }
            return self.morphisms(0, visit);
        }
        for image in 0..self.t.object_count() {
            self.obj_map[o] = image;
            let feasible = self.object_checks[o]
                .iter()
                .all(|&m| !self.t.hom(self.obj_map[self.s.src(m)], self.obj_map[self.s.tgt(m)]).is_empty());
            if feasible {
                self.objects(o + 1, visit)?;
            }
        }
        ControlFlow::Continue(())
    }

    fn morphisms<F>(&mut self, p: usize, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[Obj], &[Mor]) -> ControlFlow<()>,
    {
        if p == self.order.len() {
            return visit(&self.obj_map, &self.mor_map);
        }
        let m = self.order[p];
        let (a, b) = (self.obj_map[self.s.src(m)], self.obj_map[self.s.tgt(m)]);
        for i in 0..self.t.hom(a, b).len() {
            let image = self.t.hom(a, b)[i];
            self.mor_map[m] = image;
            let ok = self.checks[p]
                .iter()
                .all(|&(g, f, gf)| self.t.comp(self.mor_map[g], self.mor_map[f]) == self.mor_map[gf]);
            if ok {
                self.morphisms(p + 1, visit)?;
            }
        }
        self.mor_map[m] = usize::MAX;
        ControlFlow::Continue(())
    }
}

/// Largest size accepted by [`enumerate_posets`].
pub const MAX_POSET_SIZE: usize = 5;

/// Every poset on `n` elements, one per isomorphism class.
///
/// Each class has a linear extension, so only relations contained in the
/// standard order `0 < 1 < … < n-1` are generated.
pub fn enumerate_posets(n: usize) -> Result<Vec<FinCat>> {
    if n > MAX_POSET_SIZE {
        return Err(Error::SizeLimitExceeded { required: n as u128, budget: MAX_POSET_SIZE as u128 });
    }
    let pairs: Vec<(Obj, Obj)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let mut out: Vec<FinCat> = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        let le = |a: Obj, b: Obj| {
            a == b || (a < b && mask >> pairs.iter().position(|&p| p == (a, b)).expect("pair") & 1 == 1)
        };
        let transitive = (0..n).all(|a| (0..n).all(|b| !le(a, b) || (0..n).all(|c| !le(b, c) || le(a, c))));
        if !transitive {
            continue;
        }
        let p = FinCat::from_order(names.clone(), le);
        if !out.iter().any(|q| super::is_isomorphic(q, &p)) {
            out.push(p);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent count: all object maps, all morphism maps, filter by functoriality.
    fn brute_force_count(s: &FinCat, t: &FinCat) -> usize {
        let no = s.object_count();
        let nm = s.morphism_count();
        let mut count = 0;
        let total_m = (t.morphism_count() as u64).pow(nm as u32);
        for code in 0..total_m {
            let mut c = code;
            let mor: Vec<usize> = (0..nm)
                .map(|_| {
                    let r = (c % t.morphism_count() as u64) as usize;
                    c /= t.morphism_count() as u64;
                    r
                })
                .collect();
            let obj: Vec<usize> = (0..no).map(|o| t.src(mor[s.identity(o)])).collect();
            let ok = (0..no).all(|o| t.is_identity(mor[s.identity(o)]))
                && (0..nm).all(|m| t.src(mor[m]) == obj[s.src(m)] && t.tgt(mor[m]) == obj[s.tgt(m)])
                && (0..nm).all(|f| {
                    (0..nm).all(|g| match s.compose(g, f) {
                        Some(gf) => t.compose(mor[g], mor[f]) == Some(mor[gf]),
                        None => true,
                    })
                });
            if ok {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn counts_match_brute_force() {
        let cats = [
            FinCat::chain(1),
            FinCat::chain(2),
            FinCat::cyclic_group(2),
            FinCat::cyclic_group(3),
            FinCat::discrete(["a", "b"]),
        ];
        for s in &cats {
            for t in &cats {
                let fast = functors(s, t, 1_000_000).unwrap().len();
                assert_eq!(fast, brute_force_count(s, t), "{:?} -> {:?}", s.objects(), t.objects());
            }
        }
    }

    #[test]
    fn monotone_maps_of_chain() {
        // monotone maps [1] -> [1]: 00, 01, 11
        assert_eq!(functors(&FinCat::chain(1), &FinCat::chain(1), 100).unwrap().len(), 3);
    }

    #[test]
    fn budget_is_enforced() {
        let err = functors(&FinCat::chain(4), &FinCat::chain(4), 10).unwrap_err();
        assert!(matches!(err, Error::SizeLimitExceeded { required: 3125, budget: 10 }));
    }

    #[test]
    fn poset_counts() {
        let counts: Vec<usize> = (0..=4).map(|n| enumerate_posets(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 16]);
        assert!(enumerate_posets(6).is_err());
    }
}
