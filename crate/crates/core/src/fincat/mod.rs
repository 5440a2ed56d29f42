//! Finite categories stored as dense composition tables.
//!
//! A [`FinCat`] is only ever constructed through validation, so every value
//! in circulation satisfies the category axioms. Objects and morphisms are
//! addressed by index; names exist for serialization and reporting.

mod enumerate;
mod functor;
mod iso;
mod json;
mod ops;
mod present;
mod reflect;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use enumerate::{enumerate_posets, for_each_functor, functors, FunctorData, MAX_POSET_SIZE};
pub use functor::CatFunctor;
pub use iso::{find_isomorphism, is_isomorphic, Isomorphism};
pub use json::{RawCategory, RawFunctor, RawMorphism};
pub use ops::{internal_hom, product, product_map, pullback, InternalHom, Product, Pullback};
pub use present::{present, Presentation, Presented, Relation};
pub use reflect::{acyclify, posetify};

pub type Obj = usize;
pub type Mor = usize;

const NONE: u32 = u32::MAX;

/// Largest composition table a category may allocate, in entries.
pub const MAX_TABLE_ENTRIES: u128 = 1 << 26;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Morphism {
    pub name: String,
    pub src: Obj,
    pub tgt: Obj,
}

/// Poset / acyclicity classification of a category.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatClass {
    pub is_poset: bool,
    pub is_acyclic: bool,
}

impl CatClass {
    /// True when `self` lies in the class described by `required`.
    pub fn satisfies(&self, required: CatClass) -> bool {
        (!required.is_poset || self.is_poset) && (!required.is_acyclic || self.is_acyclic)
    }

    pub const CAT: CatClass = CatClass { is_poset: false, is_acyclic: false };
    pub const AC: CatClass = CatClass { is_poset: false, is_acyclic: true };
    pub const POS: CatClass = CatClass { is_poset: true, is_acyclic: true };
}

/// A validated finite category.
#[derive(Clone, Debug)]
pub struct FinCat {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<Mor>,
    table: Vec<u32>,
    homs: Vec<Vec<Mor>>,
}

impl PartialEq for FinCat {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects
            && self.morphisms == other.morphisms
            && self.identities == other.identities
            && self.table == other.table
    }
}

impl Eq for FinCat {}

impl FinCat {
    /// Builds a category from its morphism list and a composition rule.
    ///
    /// `compose(g, f)` is called for every pair with `tgt(f) == src(g)`; the
    /// result is then checked against all category axioms.
    pub fn from_fn<F>(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<Mor>,
        mut compose: F,
    ) -> Result<Self>
    where
        F: FnMut(Mor, Mor) -> Option<Mor>,
    {
        let n = morphisms.len();
        check_shape(&objects, &morphisms, &identities)?;
        let homs = build_homs(objects.len(), &morphisms);
        let mut table = vec![NONE; n * n];
        let nobj = objects.len();
        for f in 0..n {
            let t = morphisms[f].tgt;
            for &g in homs[t * nobj..(t + 1) * nobj].iter().flatten() {
                if let Some(gf) = compose(g, f) {
                    if gf >= n {
                        return Err(Error::Malformed(format!("composite index {gf} out of range")));
                    }
                    table[g * n + f] = gf as u32;
                }
            }
        }
        let cat = FinCat { objects, morphisms, identities, table, homs };
        cat.check_axioms()?;
        Ok(cat)
    }

    /// Builds a category from composition triples `(g, f, g∘f)`; triples
    /// involving an identity may be omitted.
    pub fn from_triples(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<Mor>,
        triples: &[(Mor, Mor, Mor)],
    ) -> Result<Self> {
        let n = morphisms.len();
        check_shape(&objects, &morphisms, &identities)?;
        let mut table = vec![NONE; n * n];
        for &(g, f, gf) in triples {
            if g >= n || f >= n || gf >= n {
                return Err(Error::Malformed("composition entry out of range".into()));
            }
            if morphisms[f].tgt != morphisms[g].src {
                return Err(Error::IllTypedComposition {
                    g: morphisms[g].name.clone(),
                    f: morphisms[f].name.clone(),
                    reason: "target of f differs from source of g".into(),
                });
            }
            if table[g * n + f] != NONE && table[g * n + f] != gf as u32 {
                return Err(Error::IllTypedComposition {
                    g: morphisms[g].name.clone(),
                    f: morphisms[f].name.clone(),
                    reason: "composite listed twice with different values".into(),
                });
            }
            table[g * n + f] = gf as u32;
        }
        // composites with identities may be left implicit
        for m in 0..n {
            let (before, after) = (identities[morphisms[m].src], identities[morphisms[m].tgt]);
            for slot in [m * n + before, after * n + m] {
                if table[slot] == NONE {
                    table[slot] = m as u32;
                }
            }
        }
        let homs = build_homs(objects.len(), &morphisms);
        let cat = FinCat { objects, morphisms, identities, table, homs };
        cat.check_axioms()?;
        Ok(cat)
    }

    /// The category with no objects.
    pub fn empty() -> Self {
        FinCat::from_fn(vec![], vec![], vec![], |_, _| None).expect("empty category")
    }

    /// A discrete category on the given object names.
    pub fn discrete<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        let objects: Vec<String> = names.into_iter().map(Into::into).collect();
        let morphisms =
            objects.iter().enumerate().map(|(i, o)| Morphism { name: identity_name(o), src: i, tgt: i }).collect();
        let identities = (0..objects.len()).collect();
        FinCat::from_fn(objects, morphisms, identities, |g, f| (g == f).then_some(f)).expect("discrete category")
    }

    /// The terminal category.
    pub fn terminal() -> Self {
        FinCat::discrete(["*"])
    }

    /// The chain poset `[n] = {0 < 1 < … < n}`.
    pub fn chain(n: usize) -> Self {
        let names: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
        let rel: Vec<(usize, usize)> = (0..=n).flat_map(|a| (a + 1..=n).map(move |b| (a, b))).collect();
        FinCat::poset(names, &rel).expect("chain is a poset")
    }

    /// A poset from object names and a generating relation `a ≤ b`.
    ///
    /// The relation is closed reflexively and transitively; the result is
    /// rejected if the closure is not antisymmetric.
    pub fn poset(names: Vec<String>, relation: &[(Obj, Obj)]) -> Result<Self> {
        let n = names.len();
        let mut le = vec![false; n * n];
        for i in 0..n {
            le[i * n + i] = true;
        }
        for &(a, b) in relation {
            if a >= n || b >= n {
                return Err(Error::Malformed("relation index out of range".into()));
            }
            le[a * n + b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if le[i * n + k] {
                    for j in 0..n {
                        if le[k * n + j] {
                            le[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if a != b && le[a * n + b] && le[b * n + a] {
                    return Err(Error::NotPoset(format!("{} and {} are equivalent", names[a], names[b])));
                }
            }
        }
        Ok(FinCat::from_order(names, |a, b| le[a * n + b]))
    }

    /// A poset from a reflexive, transitive, antisymmetric predicate.
    pub(crate) fn from_order(names: Vec<String>, le: impl Fn(Obj, Obj) -> bool) -> Self {
        let n = names.len();
        let mut morphisms = Vec::new();
        let mut index = vec![usize::MAX; n * n];
        let mut identities = vec![0; n];
        for a in 0..n {
            for b in 0..n {
                if le(a, b) {
                    index[a * n + b] = morphisms.len();
                    if a == b {
                        identities[a] = morphisms.len();
                        morphisms.push(Morphism { name: identity_name(&names[a]), src: a, tgt: a });
                    } else {
                        morphisms.push(Morphism { name: format!("{}<{}", names[a], names[b]), src: a, tgt: b });
                    }
                }
            }
        }
        let srcs: Vec<(Obj, Obj)> = morphisms.iter().map(|m| (m.src, m.tgt)).collect();
        FinCat::from_fn(names, morphisms, identities, |g, f| {
            let (a, _) = srcs[f];
            let (_, c) = srcs[g];
            Some(index[a * n + c])
        })
        .expect("order relation must be reflexive and transitive")
    }

    /// A finite group as a one-object category.
    pub fn group(elements: Vec<String>, mul: impl Fn(usize, usize) -> usize, unit: usize) -> Result<Self> {
        let morphisms = elements.iter().map(|e| Morphism { name: e.clone(), src: 0, tgt: 0 }).collect();
        FinCat::from_fn(vec!["*".into()], morphisms, vec![unit], |g, f| Some(mul(g, f)))
    }

    /// The cyclic group `Z/n` as a one-object category.
    pub fn cyclic_group(n: usize) -> Self {
        let names = (0..n).map(|i| format!("g{i}")).collect();
        FinCat::group(names, |a, b| (a + b) % n, 0).expect("cyclic group")
    }

    fn check_axioms(&self) -> Result<()> {
        let n = self.morphisms.len();
        let nobj = self.objects.len();
        // typing and totality
        for f in 0..n {
            for g in 0..n {
                let entry = self.table[g * n + f];
                let composable = self.morphisms[f].tgt == self.morphisms[g].src;
                if composable && entry == NONE {
                    return Err(self.ill_typed(g, f, "composite missing"));
                }
                if !composable && entry != NONE {
                    return Err(self.ill_typed(g, f, "composite defined for a non-composable pair"));
                }
                if composable {
                    let gf = entry as usize;
                    if self.morphisms[gf].src != self.morphisms[f].src
                        || self.morphisms[gf].tgt != self.morphisms[g].tgt
                    {
                        return Err(self.ill_typed(g, f, "composite has the wrong source or target"));
                    }
                }
            }
        }
        for (o, &id) in self.identities.iter().enumerate() {
            for f in 0..n {
                let bad = (self.morphisms[f].tgt == o && self.table[id * n + f] != f as u32)
                    || (self.morphisms[f].src == o && self.table[f * n + id] != f as u32);
                if bad {
                    return Err(Error::IdentityViolation {
                        identity: self.morphisms[id].name.clone(),
                        morphism: self.morphisms[f].name.clone(),
                    });
                }
            }
        }
        for f in 0..n {
            let b = self.morphisms[f].tgt;
            for &g in self.homs[b * nobj..(b + 1) * nobj].iter().flatten() {
                let c = self.morphisms[g].tgt;
                let gf = self.table[g * n + f] as usize;
                for &h in self.homs[c * nobj..(c + 1) * nobj].iter().flatten() {
                    let hg = self.table[h * n + g] as usize;
                    if self.table[h * n + gf] != self.table[hg * n + f] {
                        return Err(Error::AssociativityViolation {
                            h: self.morphisms[h].name.clone(),
                            g: self.morphisms[g].name.clone(),
                            f: self.morphisms[f].name.clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    fn ill_typed(&self, g: Mor, f: Mor, reason: &str) -> Error {
        Error::IllTypedComposition {
            g: self.morphisms[g].name.clone(),
            f: self.morphisms[f].name.clone(),
            reason: reason.into(),
        }
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn object_name(&self, o: Obj) -> &str {
        &self.objects[o]
    }

    pub fn morphism(&self, m: Mor) -> &Morphism {
        &self.morphisms[m]
    }

    pub fn src(&self, m: Mor) -> Obj {
        self.morphisms[m].src
    }

    pub fn tgt(&self, m: Mor) -> Obj {
        self.morphisms[m].tgt
    }

    pub fn identity(&self, o: Obj) -> Mor {
        self.identities[o]
    }

    pub fn identities(&self) -> &[Mor] {
        &self.identities
    }

    pub fn is_identity(&self, m: Mor) -> bool {
        let mm = &self.morphisms[m];
        mm.src == mm.tgt && self.identities[mm.src] == m
    }

    /// `g ∘ f`, or `None` when `tgt(f) != src(g)`.
    pub fn compose(&self, g: Mor, f: Mor) -> Option<Mor> {
        let e = self.table[g * self.morphisms.len() + f];
        (e != NONE).then_some(e as usize)
    }

    /// `g ∘ f` for a pair known to be composable.
    pub fn comp(&self, g: Mor, f: Mor) -> Mor {
        self.compose(g, f)
            .unwrap_or_else(|| panic!("{} ∘ {} is not composable", self.morphisms[g].name, self.morphisms[f].name))
    }

    /// Morphisms `a → b`.
    pub fn hom(&self, a: Obj, b: Obj) -> &[Mor] {
        &self.homs[a * self.objects.len() + b]
    }

    pub fn object_index(&self, name: &str) -> Option<Obj> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn morphism_index(&self, name: &str) -> Option<Mor> {
        self.morphisms.iter().position(|m| m.name == name)
    }

    /// All morphisms out of `a`.
    pub fn homs_from(&self, a: Obj) -> impl Iterator<Item = &Mor> + '_ {
        let n = self.objects.len();
        self.homs[a * n..(a + 1) * n].iter().flatten()
    }

    /// Non-identity morphisms.
    pub fn non_identities(&self) -> impl Iterator<Item = Mor> + '_ {
        (0..self.morphisms.len()).filter(move |&m| !self.is_identity(m))
    }

    /// True when some morphism `a → b` exists.
    pub fn le(&self, a: Obj, b: Obj) -> bool {
        !self.hom(a, b).is_empty()
    }

    pub fn classify(&self) -> CatClass {
        let n = self.objects.len();
        let mut is_poset = true;
        let mut is_acyclic = true;
        for a in 0..n {
            if self.hom(a, a).len() > 1 {
                is_acyclic = false;
            }
            for b in 0..n {
                let h = self.hom(a, b).len();
                if h > 1 {
                    is_poset = false;
                }
                if a != b && h > 0 && !self.hom(b, a).is_empty() {
                    is_acyclic = false;
                }
            }
        }
        CatClass { is_poset: is_poset && is_acyclic, is_acyclic }
    }

    pub fn is_poset(&self) -> bool {
        self.classify().is_poset
    }

    /// Renames objects and morphisms; structure is unchanged.
    pub fn renamed(
        &self,
        object: impl Fn(Obj, &str) -> String,
        morphism: impl Fn(Mor, &Morphism) -> String,
    ) -> Result<Self> {
        let objects: Vec<String> = self.objects.iter().enumerate().map(|(i, o)| object(i, o)).collect();
        let morphisms: Vec<Morphism> = self
            .morphisms
            .iter()
            .enumerate()
            .map(|(i, m)| Morphism { name: morphism(i, m), src: m.src, tgt: m.tgt })
            .collect();
        check_shape(&objects, &morphisms, &self.identities)?;
        Ok(FinCat {
            objects,
            morphisms,
            identities: self.identities.clone(),
            table: self.table.clone(),
            homs: self.homs.clone(),
        })
    }

    /// The full subcategory on `keep` (in the given order).
    pub fn full_subcategory(&self, keep: &[Obj]) -> (FinCat, Vec<Mor>) {
        let mut obj_new = vec![usize::MAX; self.objects.len()];
        for (i, &o) in keep.iter().enumerate() {
            obj_new[o] = i;
        }
        let mut mor_old = Vec::new();
        let mut mor_new = vec![usize::MAX; self.morphisms.len()];
        for &a in keep {
            for &b in keep {
                for &m in self.hom(a, b) {
                    mor_new[m] = mor_old.len();
                    mor_old.push(m);
                }
            }
        }
        self.subcategory_from(&obj_new, keep, &mor_old, &mor_new)
    }

    /// The subcategory on the given objects and morphisms, which must be
    /// closed under identities and composition.
    pub fn subcategory(&self, keep_obj: &[Obj], keep_mor: &[Mor]) -> Result<(FinCat, Vec<Mor>)> {
        let mut obj_new = vec![usize::MAX; self.objects.len()];
        for (i, &o) in keep_obj.iter().enumerate() {
            obj_new[o] = i;
        }
        let mut mor_new = vec![usize::MAX; self.morphisms.len()];
        for (i, &m) in keep_mor.iter().enumerate() {
            mor_new[m] = i;
        }
        for &m in keep_mor {
            if obj_new[self.src(m)] == usize::MAX || obj_new[self.tgt(m)] == usize::MAX {
                return Err(Error::Malformed("subcategory morphism leaves the object set".into()));
            }
        }
        for &o in keep_obj {
            if mor_new[self.identity(o)] == usize::MAX {
                return Err(Error::Malformed("subcategory misses an identity".into()));
            }
        }
        for &f in keep_mor {
            for &g in keep_mor {
                if let Some(gf) = self.compose(g, f) {
                    if mor_new[gf] == usize::MAX {
                        return Err(Error::Malformed("subcategory not closed under composition".into()));
                    }
                }
            }
        }
        Ok(self.subcategory_from(&obj_new, keep_obj, keep_mor, &mor_new))
    }

    fn subcategory_from(
        &self,
        obj_new: &[usize],
        keep_obj: &[Obj],
        mor_old: &[Mor],
        mor_new: &[usize],
    ) -> (FinCat, Vec<Mor>) {
        let objects = keep_obj.iter().map(|&o| self.objects[o].clone()).collect();
        let morphisms = mor_old
            .iter()
            .map(|&m| Morphism {
                name: self.morphisms[m].name.clone(),
                src: obj_new[self.src(m)],
                tgt: obj_new[self.tgt(m)],
            })
            .collect();
        let identities = keep_obj.iter().map(|&o| mor_new[self.identity(o)]).collect();
        let cat =
            FinCat::from_fn(objects, morphisms, identities, |g, f| Some(mor_new[self.comp(mor_old[g], mor_old[f])]))
                .expect("subcategory of a valid category");
        (cat, mor_old.to_vec())
    }

    /// The opposite category.
    pub fn opposite(&self) -> FinCat {
        let morphisms =
            self.morphisms.iter().map(|m| Morphism { name: m.name.clone(), src: m.tgt, tgt: m.src }).collect();
        FinCat::from_fn(self.objects.clone(), morphisms, self.identities.clone(), |g, f| self.compose(f, g))
            .expect("opposite of a valid category")
    }
}

pub(crate) fn identity_name(object: &str) -> String {
    format!("id:{object}")
}

fn check_shape(objects: &[String], morphisms: &[Morphism], identities: &[Mor]) -> Result<()> {
    if identities.len() != objects.len() {
        return Err(Error::Malformed("one identity per object is required".into()));
    }
    if objects.len() >= NONE as usize || morphisms.len() >= NONE as usize {
        return Err(Error::Malformed("category too large".into()));
    }
    let entries = (morphisms.len() as u128).pow(2);
    if entries > MAX_TABLE_ENTRIES {
        return Err(Error::SizeLimitExceeded { required: entries, budget: MAX_TABLE_ENTRIES });
    }
    let mut seen = HashMap::new();
    for o in objects {
        if seen.insert(o.as_str(), ()).is_some() {
            return Err(Error::Malformed(format!("duplicate object name `{o}`")));
        }
    }
    let mut seen = HashMap::new();
    for m in morphisms {
        if m.src >= objects.len() || m.tgt >= objects.len() {
            return Err(Error::Malformed(format!("morphism `{}` has an unknown endpoint", m.name)));
        }
        if seen.insert(m.name.as_str(), ()).is_some() {
            return Err(Error::Malformed(format!("duplicate morphism name `{}`", m.name)));
        }
    }
    for (o, &id) in identities.iter().enumerate() {
        let m = morphisms.get(id).ok_or_else(|| Error::Malformed("identity index out of range".into()))?;
        if m.src != o || m.tgt != o {
            return Err(Error::IdentityViolation { identity: m.name.clone(), morphism: m.name.clone() });
        }
    }
    Ok(())
}

fn build_homs(nobj: usize, morphisms: &[Morphism]) -> Vec<Vec<Mor>> {
    let mut homs = vec![Vec::new(); nobj * nobj];
    for (i, m) in morphisms.iter().enumerate() {
        homs[m.src * nobj + m.tgt].push(i);
    }
    homs
}

/// Makes `name` unique with respect to `taken` by appending a counter.
pub(crate) fn fresh_name(name: String, taken: &mut std::collections::HashSet<String>) -> String {
    if taken.insert(name.clone()) {
        return name;
    }
    let mut k = 2;
    loop {
        let candidate = format!("{name}#{k}");
        if taken.insert(candidate.clone()) {
            return candidate;
        }
        k += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

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
    fn terminal_is_valid() {
        let t = FinCat::terminal();
        assert_eq!(t.object_count(), 1);
        assert_eq!(t.morphism_count(), 1);
    }

    #[test]
    fn chain_is_poset() {
        let c = FinCat::chain(1);
        assert_eq!(c.morphism_count(), 3);
        assert_eq!(c.classify(), CatClass { is_poset: true, is_acyclic: true });
    }

    #[test]
    fn idempotent_is_not_acyclic() {
        assert_eq!(idempotent().classify(), CatClass { is_poset: false, is_acyclic: false });
    }

    #[test]
    fn parallel_pair_is_acyclic_not_poset() {
        let c = FinCat::from_triples(
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
        .unwrap();
        assert_eq!(c.classify(), CatClass { is_poset: false, is_acyclic: true });
    }

    #[test]
    fn z2_is_neither() {
        assert_eq!(FinCat::cyclic_group(2).classify(), CatClass::CAT);
    }

    #[test]
    fn rejects_non_associative_table() {
        // a one-object "category" with e∘e = id, f∘f = id, e∘f = e, f∘e = f
        let err = FinCat::from_triples(
            vec!["x".into()],
            vec![
                Morphism { name: "id".into(), src: 0, tgt: 0 },
                Morphism { name: "e".into(), src: 0, tgt: 0 },
                Morphism { name: "f".into(), src: 0, tgt: 0 },
            ],
            vec![0],
            &[(0, 0, 0), (0, 1, 1), (1, 0, 1), (0, 2, 2), (2, 0, 2), (1, 1, 0), (2, 2, 0), (1, 2, 1), (2, 1, 2)],
        )
        .unwrap_err();
        assert!(matches!(err, Error::AssociativityViolation { .. }), "{err:?}");
    }

    #[test]
    fn rejects_missing_composite() {
        let err = FinCat::from_triples(
            vec!["x".into()],
            vec![Morphism { name: "id".into(), src: 0, tgt: 0 }, Morphism { name: "e".into(), src: 0, tgt: 0 }],
            vec![0],
            &[(0, 0, 0), (0, 1, 1), (1, 0, 1)],
        )
        .unwrap_err();
        assert!(matches!(err, Error::IllTypedComposition { .. }));
    }

    #[test]
    fn rejects_bad_identity() {
        let err = FinCat::from_triples(
            vec!["x".into()],
            vec![Morphism { name: "id".into(), src: 0, tgt: 0 }, Morphism { name: "e".into(), src: 0, tgt: 0 }],
            vec![0],
            &[(0, 0, 0), (0, 1, 0), (1, 0, 1), (1, 1, 1)],
        )
        .unwrap_err();
        assert!(matches!(err, Error::IdentityViolation { .. }), "{err:?}");
    }

    #[test]
    fn rejects_ill_typed_triple() {
        let c = FinCat::chain(1);
        let raw_mors = c.morphisms().to_vec();
        let err =
            FinCat::from_triples(c.objects().to_vec(), raw_mors, c.identities().to_vec(), &[(1, 1, 1)]).unwrap_err();
        assert!(matches!(err, Error::IllTypedComposition { .. }));
    }

    #[test]
    fn oversized_tables_are_refused() {
        let side = 1 << 13;
        let n = side + 1;
        let morphisms = (0..n).map(|m| Morphism { name: m.to_string(), src: 0, tgt: 0 }).collect();
        let err = FinCat::from_triples(vec!["*".into()], morphisms, vec![0], &[]).unwrap_err();
        assert!(matches!(err, Error::SizeLimitExceeded { .. }), "{err:?}");
    }

    #[test]
    fn identity_composites_are_implicit() {
        let c = FinCat::chain(1);
        let d =
            FinCat::from_triples(c.objects().to_vec(), c.morphisms().to_vec(), c.identities().to_vec(), &[]).unwrap();
        assert_eq!(c, d);
    }

    #[test]
    fn opposite_swaps_direction() {
        let c = FinCat::chain(2);
        let op = c.opposite();
        assert!(op.le(2, 0));
        assert!(!op.le(0, 2));
    }
}
