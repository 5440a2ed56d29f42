//! The pushout of a functor along a Dwyer map between posets, built directly
//! from hom-set formulas rather than by quotienting.
//!
//! With `i: A → B`, cosieve `W`, retraction `r` and `F: A → C`, the pushout
//! `D` has objects `ob C ⊔ (ob B ∖ ob A)` and
//!
//! * `D(c, c') = C(c, c')`,
//! * `D(b, b') = B(b, b')` for `b, b' ∉ A`,
//! * `D(b, c) = ∅`,
//! * `D(c, b) = C(c, F r b)` for `b ∈ W ∖ A`, and `∅` for `b ∉ W`.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use super::DwyerWitness;
use crate::error::{Error, Result};
use crate::fincat::{fresh_name, CatFunctor, FinCat, Mor, Morphism, Obj};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Kind {
    FromC(Mor),
    FromB(Mor),
    /// `(c, b, φ)` with `φ ∈ C(c, F r b)`.
    Mixed(Obj, Obj, Mor),
}

/// The pushout category with its cocone.
#[derive(Clone, Debug)]
pub struct DwyerPushout {
    pub cat: Arc<FinCat>,
    /// `B → D`.
    pub from_b: CatFunctor,
    /// `C → D`, injective on objects and morphisms.
    pub from_c: CatFunctor,
    witness: DwyerWitness,
    functor: CatFunctor,
    kinds: Vec<Kind>,
    /// Object of `D` for each object of `B ∖ A`.
    new_object: Vec<Option<Obj>>,
}

impl DwyerPushout {
    /// The unique functor `D → T` restricting to `beta` on `B` and `gamma` on `C`.
    pub fn induced(&self, beta: &CatFunctor, gamma: &CatFunctor) -> Result<CatFunctor> {
        let t = gamma.target().clone();
        let a = self.witness.source();
        let b = self.witness.target();
        let i = &self.witness.inclusion;
        for x in 0..a.morphism_count() {
            if beta.mor(i.mor(x)) != gamma.mor(self.functor.mor(x)) {
                return Err(Error::NotFunctor("the two legs disagree on A".into()));
            }
        }
        let d = &self.cat;
        let mut obj_map = vec![0; d.object_count()];
        for c in 0..gamma.source().object_count() {
            obj_map[self.from_c.obj(c)] = gamma.obj(c);
        }
        for (x, o) in self.new_object.iter().enumerate() {
            if let Some(o) = o {
                obj_map[*o] = beta.obj(x);
            }
        }
        let mor_map = self
            .kinds
            .iter()
            .map(|k| match *k {
                Kind::FromC(m) => gamma.mor(m),
                Kind::FromB(m) => beta.mor(m),
                Kind::Mixed(_, y, phi) => {
                    // β(i r y ≤ y) ∘ γ(φ)
                    let ry = self.witness.r(y).expect("mixed morphisms land in W");
                    let counit = b.hom(i.obj(ry), y)[0];
                    t.comp(beta.mor(counit), gamma.mor(phi))
                }
            })
            .collect();
        CatFunctor::new(d.clone(), t, obj_map, mor_map)
    }
}

/// Builds the pushout of `f: A → C` along the Dwyer map of `w`.
pub fn dwyer_pushout(w: &DwyerWitness, f: &CatFunctor) -> Result<DwyerPushout> {
    w.verify().map_err(|e| Error::InvalidWitness(e.to_string()))?;
    let a = w.source();
    let b = w.target();
    let c = f.target();
    if **f.source() != **a {
        return Err(Error::InvalidWitness("functor does not start at the source of the Dwyer map".into()));
    }
    let i = &w.inclusion;
    let mut in_a = vec![false; b.object_count()];
    for &x in i.obj_map() {
        in_a[x] = true;
    }

    let mut taken: HashSet<String> = c.objects().iter().cloned().collect();
    let mut objects: Vec<String> = c.objects().to_vec();
    let mut new_object = vec![None; b.object_count()];
    for y in 0..b.object_count() {
        if !in_a[y] {
            new_object[y] = Some(objects.len());
            objects.push(fresh_name(b.object_name(y).to_string(), &mut taken));
        }
    }
    let mut mor_names: HashSet<String> = c.morphisms().iter().map(|m| m.name.clone()).collect();
    let mut morphisms: Vec<Morphism> = c.morphisms().to_vec();
    let mut kinds: Vec<Kind> = (0..c.morphism_count()).map(Kind::FromC).collect();
    let mut identities: Vec<Mor> = c.identities().to_vec();
    identities.resize(objects.len(), 0);
    for m in 0..b.morphism_count() {
        if let (Some(s), Some(t)) = (new_object[b.src(m)], new_object[b.tgt(m)]) {
            if b.is_identity(m) {
                identities[s] = morphisms.len();
            }
            let name = fresh_name(b.morphism(m).name.clone(), &mut mor_names);
            morphisms.push(Morphism { name, src: s, tgt: t });
            kinds.push(Kind::FromB(m));
        }
    }
    for y in 0..b.object_count() {
        let (Some(t), Some(ry)) = (new_object[y], w.r(y)) else {
            continue;
        };
        let fry = f.obj(ry);
        for x in 0..c.object_count() {
            for &phi in c.hom(x, fry) {
                let name = fresh_name(format!("{}▸{}", c.morphism(phi).name, b.object_name(y)), &mut mor_names);
                morphisms.push(Morphism { name, src: x, tgt: t });
                kinds.push(Kind::Mixed(x, y, phi));
            }
        }
    }
    let index: HashMap<Kind, Mor> = kinds.iter().enumerate().map(|(k, &kind)| (kind, k)).collect();
    // F(r y ≤ r y') for y ≤ y' in W
    let f_r = |y: Obj, y2: Obj| -> Mor {
        let (ry, ry2) = (w.r(y).unwrap(), w.r(y2).unwrap());
        f.mor(a.hom(ry, ry2)[0])
    };
    let cat = FinCat::from_fn(objects, morphisms, identities, |g, h| {
        let kind = match (kinds[h], kinds[g]) {
            (Kind::FromC(p), Kind::FromC(q)) => Kind::FromC(c.compose(q, p)?),
            (Kind::FromB(p), Kind::FromB(q)) => Kind::FromB(b.compose(q, p)?),
            (Kind::FromC(p), Kind::Mixed(x, y, phi)) => {
                if c.tgt(p) != x {
                    return None;
                }
                Kind::Mixed(c.src(p), y, c.comp(phi, p))
            }
            (Kind::Mixed(x, y, phi), Kind::FromB(q)) => {
                if b.src(q) != y {
                    return None;
                }
                let y2 = b.tgt(q);
                Kind::Mixed(x, y2, c.comp(f_r(y, y2), phi))
            }
            _ => return None,
        };
        index.get(&kind).copied()
    })?;
    let cat = Arc::new(cat);

    let from_c =
        CatFunctor::new(c.clone(), cat.clone(), (0..c.object_count()).collect(), (0..c.morphism_count()).collect())?;
    // i(a) ↦ F(a); new objects ↦ themselves
    let mut a_of = vec![None; b.object_count()];
    for x in 0..a.object_count() {
        a_of[i.obj(x)] = Some(x);
    }
    let b_obj: Vec<Obj> =
        (0..b.object_count()).map(|y| new_object[y].unwrap_or_else(|| f.obj(a_of[y].unwrap()))).collect();
    let b_mor = (0..b.morphism_count())
        .map(|m| {
            let (s, t) = (b.src(m), b.tgt(m));
            let kind = match (a_of[s], a_of[t]) {
                (Some(x), Some(x2)) => Kind::FromC(f.mor(a.hom(x, x2)[0])),
                (None, None) => Kind::FromB(m),
                (Some(x), None) => {
                    let rt = w.r(t).expect("cosieve contains everything above A");
                    Kind::Mixed(f.obj(x), t, f.mor(a.hom(x, rt)[0]))
                }
                (None, Some(_)) => unreachable!("a sieve has no morphisms into A from outside"),
            };
            index[&kind]
        })
        .collect();
    let from_b = CatFunctor::new(b.clone(), cat.clone(), b_obj, b_mor)?;
    let left = i.then(&from_b)?;
    let right = f.then(&from_c)?;
    if left.obj_map() != right.obj_map() || left.mor_map() != right.mor_map() {
        return Err(Error::InvalidWitness("cocone does not commute".into()));
    }
    Ok(DwyerPushout { cat, from_b, from_c, witness: w.clone(), functor: f.clone(), kinds, new_object })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dwyer::{find_dwyer_witness, full_inclusion};
    use crate::fincat::is_isomorphic;

    #[test]
    fn point_under_arrow() {
        let b = Arc::new(FinCat::chain(1));
        let w = find_dwyer_witness(&full_inclusion(&b, &[0])).unwrap().unwrap();
        let t = Arc::new(FinCat::terminal());
        let f = CatFunctor::new(w.source().clone(), t, vec![0], vec![0]).unwrap();
        let p = dwyer_pushout(&w, &f).unwrap();
        assert_eq!(p.cat.object_count(), 2);
        assert!(is_isomorphic(&p.cat, &FinCat::chain(1)));
    }

    #[test]
    fn identity_legs() {
        let b = Arc::new(FinCat::chain(2));
        let w = find_dwyer_witness(&full_inclusion(&b, &[0, 1])).unwrap().unwrap();
        let id = CatFunctor::identity(w.source().clone());
        let p = dwyer_pushout(&w, &id).unwrap();
        assert!(is_isomorphic(&p.cat, &b));
        let wid = find_dwyer_witness(&CatFunctor::identity(b.clone())).unwrap().unwrap();
        let g = Arc::new(FinCat::cyclic_group(2));
        let f = CatFunctor::new(b.clone(), g.clone(), vec![0; 3], vec![0; 6]).unwrap();
        assert!(is_isomorphic(&dwyer_pushout(&wid, &f).unwrap().cat, &g));
    }

    #[test]
    fn gluing_into_a_group() {
        // attach an arrow to Z/3 at its object: D(*, new) ≅ Z/3
        let b = Arc::new(FinCat::chain(1));
        let w = find_dwyer_witness(&full_inclusion(&b, &[0])).unwrap().unwrap();
        let g = Arc::new(FinCat::cyclic_group(3));
        let f = CatFunctor::new(w.source().clone(), g, vec![0], vec![0]).unwrap();
        let p = dwyer_pushout(&w, &f).unwrap();
        assert_eq!(p.cat.hom(0, 1).len(), 3);
        assert!(p.cat.hom(1, 0).is_empty());
        assert!(p.from_c.is_monomorphism());
    }
}
