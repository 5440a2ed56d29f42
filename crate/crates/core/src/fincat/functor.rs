use std::sync::Arc;

use super::{FinCat, Mor, Obj};
use crate::error::{Error, Result};

/// A functor between finite categories, checked exhaustively on construction.
#[derive(Clone, Debug)]
pub struct CatFunctor {
    source: Arc<FinCat>,
    target: Arc<FinCat>,
    obj_map: Vec<Obj>,
    mor_map: Vec<Mor>,
}

impl PartialEq for CatFunctor {
    fn eq(&self, other: &Self) -> bool {
        self.obj_map == other.obj_map
            && self.mor_map == other.mor_map
            && (Arc::ptr_eq(&self.source, &other.source) || self.source == other.source)
            && (Arc::ptr_eq(&self.target, &other.target) || self.target == other.target)
    }
}

impl CatFunctor {
    pub fn new(source: Arc<FinCat>, target: Arc<FinCat>, obj_map: Vec<Obj>, mor_map: Vec<Mor>) -> Result<Self> {
        let f = CatFunctor { source, target, obj_map, mor_map };
        f.check()?;
        Ok(f)
    }

    /// Builds a functor from its morphism map alone; objects follow identities.
    pub fn from_morphisms(source: Arc<FinCat>, target: Arc<FinCat>, mor_map: Vec<Mor>) -> Result<Self> {
        if mor_map.len() != source.morphism_count() {
            return Err(Error::NotFunctor("morphism map has the wrong length".into()));
        }
        let obj_map = (0..source.object_count())
            .map(|o| {
                let m = *mor_map.get(source.identity(o)).unwrap_or(&usize::MAX);
                if m >= target.morphism_count() {
                    usize::MAX
                } else {
                    target.src(m)
                }
            })
            .collect();
        CatFunctor::new(source, target, obj_map, mor_map)
    }

    pub(crate) fn new_unchecked(
        source: Arc<FinCat>,
        target: Arc<FinCat>,
        obj_map: Vec<Obj>,
        mor_map: Vec<Mor>,
    ) -> Self {
        let f = CatFunctor { source, target, obj_map, mor_map };
        debug_assert!(f.check().is_ok(), "{:?}", f.check());
        f
    }

    pub fn identity(cat: Arc<FinCat>) -> Self {
        let obj_map = (0..cat.object_count()).collect();
        let mor_map = (0..cat.morphism_count()).collect();
        CatFunctor { source: cat.clone(), target: cat, obj_map, mor_map }
    }

    /// The unique functor out of the empty category.
    pub fn from_empty(target: Arc<FinCat>) -> Self {
        CatFunctor { source: Arc::new(FinCat::empty()), target, obj_map: vec![], mor_map: vec![] }
    }

    fn check(&self) -> Result<()> {
        let (s, t) = (&*self.source, &*self.target);
        if self.obj_map.len() != s.object_count() || self.mor_map.len() != s.morphism_count() {
            return Err(Error::NotFunctor("map lengths do not match the source".into()));
        }
        if self.obj_map.iter().any(|&o| o >= t.object_count()) || self.mor_map.iter().any(|&m| m >= t.morphism_count())
        {
            return Err(Error::NotFunctor("image out of range".into()));
        }
        for m in 0..s.morphism_count() {
            let fm = self.mor_map[m];
            if t.src(fm) != self.obj_map[s.src(m)] || t.tgt(fm) != self.obj_map[s.tgt(m)] {
                return Err(Error::NotFunctor(format!(
                    "{} is sent to a morphism with wrong endpoints",
                    s.morphism(m).name
                )));
            }
        }
        for o in 0..s.object_count() {
            if self.mor_map[s.identity(o)] != t.identity(self.obj_map[o]) {
                return Err(Error::NotFunctor(format!("identity of {} not preserved", s.object_name(o))));
            }
        }
        for f in 0..s.morphism_count() {
            for &g in s.homs_from(s.tgt(f)) {
                let gf = s.comp(g, f);
                if t.comp(self.mor_map[g], self.mor_map[f]) != self.mor_map[gf] {
                    return Err(Error::NotFunctor(format!(
                        "composite {} ∘ {} not preserved",
                        s.morphism(g).name,
                        s.morphism(f).name
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &Arc<FinCat> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinCat> {
        &self.target
    }

    pub fn obj(&self, o: Obj) -> Obj {
        self.obj_map[o]
    }

    pub fn mor(&self, m: Mor) -> Mor {
        self.mor_map[m]
    }

    pub fn obj_map(&self) -> &[Obj] {
        &self.obj_map
    }

    pub fn mor_map(&self) -> &[Mor] {
        &self.mor_map
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &CatFunctor) -> Result<CatFunctor> {
        if self.target.as_ref() != other.source.as_ref() {
            return Err(Error::NotFunctor("functors are not composable".into()));
        }
        Ok(CatFunctor {
            source: self.source.clone(),
            target: other.target.clone(),
            obj_map: self.obj_map.iter().map(|&o| other.obj_map[o]).collect(),
            mor_map: self.mor_map.iter().map(|&m| other.mor_map[m]).collect(),
        })
    }

    /// Injective on objects and morphisms.
    pub fn is_monomorphism(&self) -> bool {
        is_injective(&self.obj_map, self.target.object_count())
            && is_injective(&self.mor_map, self.target.morphism_count())
    }

    /// Bijective on objects and morphisms.
    pub fn is_isomorphism(&self) -> bool {
        self.is_monomorphism()
            && self.obj_map.len() == self.target.object_count()
            && self.mor_map.len() == self.target.morphism_count()
    }

    /// Full and faithful.
    pub fn is_fully_faithful(&self) -> bool {
        let (s, t) = (&*self.source, &*self.target);
        for a in 0..s.object_count() {
            for b in 0..s.object_count() {
                let src_hom = s.hom(a, b);
                let tgt_hom = t.hom(self.obj_map[a], self.obj_map[b]);
                if src_hom.len() != tgt_hom.len() {
                    return false;
                }
                let mut img: Vec<Mor> = src_hom.iter().map(|&m| self.mor_map[m]).collect();
                img.sort_unstable();
                img.dedup();
                if img.len() != src_hom.len() {
                    return false;
                }
            }
        }
        true
    }

    /// Inverse of an isomorphism.
    pub fn inverse(&self) -> Option<CatFunctor> {
        if !self.is_isomorphism() {
            return None;
        }
        let mut obj_map = vec![0; self.obj_map.len()];
        for (a, &b) in self.obj_map.iter().enumerate() {
            obj_map[b] = a;
        }
        let mut mor_map = vec![0; self.mor_map.len()];
        for (a, &b) in self.mor_map.iter().enumerate() {
            mor_map[b] = a;
        }
        Some(CatFunctor { source: self.target.clone(), target: self.source.clone(), obj_map, mor_map })
    }
}

fn is_injective(map: &[usize], range: usize) -> bool {
    let mut seen = vec![false; range];
    for &x in map {
        if seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_functor_is_iso() {
        let c = Arc::new(FinCat::chain(2));
        let id = CatFunctor::identity(c.clone());
        assert!(id.is_isomorphism());
        assert_eq!(id.then(&id).unwrap(), id);
    }

    #[test]
    fn rejects_non_functor() {
        let c = Arc::new(FinCat::chain(1));
        // swap objects: 0<1 cannot go anywhere
        let err = CatFunctor::new(c.clone(), c.clone(), vec![1, 0], vec![0, 1, 2]).unwrap_err();
        assert!(matches!(err, Error::NotFunctor(_)));
    }

    #[test]
    fn inclusion_of_bottom_is_mono() {
        let one = Arc::new(FinCat::discrete(["0"]));
        let c = Arc::new(FinCat::chain(1));
        let f = CatFunctor::from_morphisms(one, c.clone(), vec![c.identity(0)]).unwrap();
        assert!(f.is_monomorphism());
        assert!(!f.is_isomorphism());
        assert!(f.is_fully_faithful());
    }
}
