//! Strict isomorphism of finite categories by backtracking.

use super::{FinCat, Mor, Obj};

/// Object and morphism bijections of an isomorphism `C → D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isomorphism {
    pub obj_map: Vec<Obj>,
    pub mor_map: Vec<Mor>,
}

pub fn is_isomorphic(c: &FinCat, d: &FinCat) -> bool {
    find_isomorphism(c, d).is_some()
}

/// Searches for a strict isomorphism `c → d`.
pub fn find_isomorphism(c: &FinCat, d: &FinCat) -> Option<Isomorphism> {
    if c.object_count() != d.object_count() || c.morphism_count() != d.morphism_count() {
        return None;
    }
    let sig_c: Vec<Signature> = (0..c.object_count()).map(|o| signature(c, o)).collect();
    let sig_d: Vec<Signature> = (0..d.object_count()).map(|o| signature(d, o)).collect();
    let mut a = sig_c.clone();
    let mut b = sig_d.clone();
    a.sort();
    b.sort();
    if a != b {
        return None;
    }
    // most constrained objects first: rarest signature
    let mut order: Vec<Obj> = (0..c.object_count()).collect();
    order.sort_by_key(|&o| (sig_c.iter().filter(|s| **s == sig_c[o]).count(), o));
    let mut st = State {
        c,
        d,
        sig_c,
        sig_d,
        order,
        obj_map: vec![usize::MAX; c.object_count()],
        used_obj: vec![false; d.object_count()],
        result: None,
    };
    st.objects(0);
    st.result
}

type Signature = (usize, Vec<usize>, Vec<usize>);

fn signature(c: &FinCat, o: Obj) -> Signature {
    let n = c.object_count();
    let mut outs: Vec<usize> = (0..n).map(|b| c.hom(o, b).len()).collect();
    let mut ins: Vec<usize> = (0..n).map(|a| c.hom(a, o).len()).collect();
    outs.sort_unstable();
    ins.sort_unstable();
    (c.hom(o, o).len(), outs, ins)
}

struct State<'a> {
    c: &'a FinCat,
    d: &'a FinCat,
    sig_c: Vec<Signature>,
    sig_d: Vec<Signature>,
    order: Vec<Obj>,
    obj_map: Vec<Obj>,
    used_obj: Vec<bool>,
    result: Option<Isomorphism>,
}

impl State<'_> {
    fn objects(&mut self, k: usize) {
        if self.result.is_some() {
            return;
        }
        if k == self.order.len() {
            if let Some(mor_map) = morphism_bijection(self.c, self.d, &self.obj_map) {
                self.result = Some(Isomorphism { obj_map: self.obj_map.clone(), mor_map });
            }
            return;
        }
        let o = self.order[k];
        for image in 0..self.d.object_count() {
            if self.used_obj[image] || self.sig_c[o] != self.sig_d[image] {
                continue;
            }
            let consistent = self.order[..k].iter().all(|&p| {
                let q = self.obj_map[p];
                self.c.hom(o, p).len() == self.d.hom(image, q).len()
                    && self.c.hom(p, o).len() == self.d.hom(q, image).len()
            });
            if !consistent {
                continue;
            }
            self.obj_map[o] = image;
            self.used_obj[image] = true;
            self.objects(k + 1);
            self.used_obj[image] = false;
            self.obj_map[o] = usize::MAX;
            if self.result.is_some() {
                return;
            }
        }
    }
}

/// Finds a composition-preserving bijection on morphisms over a fixed object bijection.
fn morphism_bijection(c: &FinCat, d: &FinCat, obj_map: &[Obj]) -> Option<Vec<Mor>> {
    let order: Vec<Mor> = c.non_identities().collect();
    let mut pos = vec![usize::MAX; c.morphism_count()];
    for (i, &m) in order.iter().enumerate() {
        pos[m] = i;
    }
    let mut checks = vec![Vec::new(); order.len()];
    for f in 0..c.morphism_count() {
        for &g in c.homs_from(c.tgt(f)) {
            let gf = c.comp(g, f);
            if let Some(p) = [pos[f], pos[g], pos[gf]].into_iter().filter(|&p| p != usize::MAX).max() {
                checks[p].push((g, f, gf));
            }
        }
    }
    let mut mor_map = vec![usize::MAX; c.morphism_count()];
    for o in 0..c.object_count() {
        mor_map[c.identity(o)] = d.identity(obj_map[o]);
    }
    let mut used = vec![false; d.morphism_count()];
    for o in 0..c.object_count() {
        used[d.identity(obj_map[o])] = true;
    }
    fn go(
        p: usize,
        c: &FinCat,
        d: &FinCat,
        obj_map: &[Obj],
        order: &[Mor],
        checks: &[Vec<(Mor, Mor, Mor)>],
        mor_map: &mut Vec<Mor>,
        used: &mut Vec<bool>,
    ) -> bool {
        if p == order.len() {
            return true;
        }
        let m = order[p];
        let hom = d.hom(obj_map[c.src(m)], obj_map[c.tgt(m)]);
        for &image in hom {
            if used[image] || d.is_identity(image) {
                continue;
            }
            mor_map[m] = image;
            let ok = checks[p].iter().all(|&(g, f, gf)| d.comp(mor_map[g], mor_map[f]) == mor_map[gf]);
            if ok {
                used[image] = true;
                if go(p + 1, c, d, obj_map, order, checks, mor_map, used) {
                    return true;
                }
                used[image] = false;
            }
        }
        mor_map[m] = usize::MAX;
        false
    }
    go(0, c, d, obj_map, &order, &checks, &mut mor_map, &mut used).then_some(mor_map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::CatFunctor;
    use std::sync::Arc;

    #[test]
    fn relabelled_chain_is_isomorphic() {
        let c = FinCat::chain(2);
        let d = FinCat::poset(vec!["x".into(), "y".into(), "z".into()], &[(2, 0), (0, 1)]).unwrap();
        let iso = find_isomorphism(&c, &d).unwrap();
        assert_eq!(iso.obj_map, vec![2, 0, 1]);
        let f = CatFunctor::new(Arc::new(c), Arc::new(d), iso.obj_map, iso.mor_map).unwrap();
        assert!(f.is_isomorphism());
    }

    #[test]
    fn distinguishes_groups_of_same_order() {
        let z4 = FinCat::cyclic_group(4);
        let v4 = FinCat::group((0..4).map(|i| format!("v{i}")).collect(), |a, b| a ^ b, 0).unwrap();
        assert!(!is_isomorphic(&z4, &v4));
        assert!(is_isomorphic(&v4, &v4.clone()));
    }

    #[test]
    fn chain_and_discrete_differ() {
        assert!(!is_isomorphic(&FinCat::chain(1), &FinCat::discrete(["a", "b"])));
    }
}
