//! Sieves, cosieves and Dwyer maps between posets, with the explicit
//! pushout along a Dwyer map and a universal-property oracle.

mod oracle;
mod pushout;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::{CatFunctor, FinCat, Obj};

pub use oracle::{pushout_oracle, test_categories, OracleReport};
pub use pushout::{dwyer_pushout, DwyerPushout};

fn require_mono(i: &CatFunctor) -> Result<()> {
    if i.is_monomorphism() {
        Ok(())
    } else {
        Err(Error::NotMonomorphism("functor is not injective on objects and morphisms".into()))
    }
}

/// Whether every morphism of `B` into the image of `i` is itself in the image.
pub fn is_sieve(i: &CatFunctor) -> Result<bool> {
    require_mono(i)?;
    Ok(closed_under(i, |b, m| b.tgt(m)))
}

/// Whether every morphism of `B` out of the image of `i` is itself in the image.
pub fn is_cosieve(i: &CatFunctor) -> Result<bool> {
    require_mono(i)?;
    Ok(closed_under(i, |b, m| b.src(m)))
}

fn closed_under(i: &CatFunctor, anchor: impl Fn(&FinCat, usize) -> Obj) -> bool {
    let b = i.target();
    let mut in_obj = vec![false; b.object_count()];
    for &o in i.obj_map() {
        in_obj[o] = true;
    }
    let mut in_mor = vec![false; b.morphism_count()];
    for &m in i.mor_map() {
        in_mor[m] = true;
    }
    (0..b.morphism_count()).all(|m| !in_obj[anchor(b, m)] || in_mor[m])
}

/// Certificate that `inclusion: A → B` is a Dwyer map between posets.
///
/// `cosieve` lists the objects of `W`, the cosieve generated by the image of
/// `A`, and `retraction[w]` is the right adjoint `r: W → A` on objects, with
/// `None` outside `W`.
#[derive(Clone, Debug)]
pub struct DwyerWitness {
    pub inclusion: CatFunctor,
    pub cosieve: Vec<Obj>,
    pub retraction: Vec<Option<Obj>>,
}

impl DwyerWitness {
    pub fn source(&self) -> &Arc<FinCat> {
        self.inclusion.source()
    }

    pub fn target(&self) -> &Arc<FinCat> {
        self.inclusion.target()
    }

    /// `r(w)` for `w ∈ W`.
    pub fn r(&self, w: Obj) -> Option<Obj> {
        self.retraction[w]
    }

    /// `r` as a functor from the full subcategory on `W`.
    pub fn retraction_functor(&self) -> Result<CatFunctor> {
        let (a, b) = (self.source(), self.target());
        let (w, _) = b.full_subcategory(&self.cosieve);
        let w = Arc::new(w);
        let obj_map: Vec<Obj> = self.cosieve.iter().map(|&x| self.retraction[x].expect("r is defined on W")).collect();
        let mor_map = (0..w.morphism_count())
            .map(|m| {
                let (x, y) = (obj_map[w.src(m)], obj_map[w.tgt(m)]);
                a.hom(x, y).first().copied().ok_or_else(|| Error::InvalidWitness("r is not monotone".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        CatFunctor::new(w, a.clone(), obj_map, mor_map)
    }

    /// Re-checks every defining condition from scratch.
    pub fn verify(&self) -> Result<()> {
        let (a, b) = (self.source(), self.target());
        if !a.is_poset() || !b.is_poset() {
            return Err(Error::NotPoset("Dwyer witnesses are only defined between posets".into()));
        }
        if !is_sieve(&self.inclusion)? {
            return Err(Error::NotSieve);
        }
        let invalid = |s: &str| Err(Error::InvalidWitness(s.into()));
        let mut in_w = vec![false; b.object_count()];
        for &w in &self.cosieve {
            in_w[w] = true;
        }
        if self.inclusion.obj_map().iter().any(|&x| !in_w[x]) {
            return invalid("W does not contain the image of A");
        }
        for m in 0..b.morphism_count() {
            if in_w[b.src(m)] && !in_w[b.tgt(m)] {
                return invalid("W is not a cosieve");
            }
        }
        for x in 0..b.object_count() {
            if in_w[x] != self.retraction[x].is_some() {
                return invalid("r is not defined exactly on W");
            }
        }
        // f(a) ≤ w  ⟺  a ≤ r(w)
        for &w in &self.cosieve {
            let rw = self.retraction[w].expect("checked above");
            for x in 0..a.object_count() {
                if b.le(self.inclusion.obj(x), w) != a.le(x, rw) {
                    return invalid("r is not right adjoint to the corestriction");
                }
            }
        }
        self.retraction_functor().map(|_| ())
    }
}

/// Decides whether a sieve `i` between posets is a Dwyer map.
///
/// `W` is the cosieve generated by the image. A right adjoint to `A → W`
/// exists exactly when each `{a : i(a) ≤ w}` has a greatest element, which
/// is then `r(w)`.
pub fn find_dwyer_witness(i: &CatFunctor) -> Result<Option<DwyerWitness>> {
    let (a, b) = (i.source(), i.target());
    if !a.is_poset() || !b.is_poset() {
        return Err(Error::NotPoset("Dwyer witnesses are only defined between posets".into()));
    }
    if !is_sieve(i)? {
        return Err(Error::NotSieve);
    }
    let cosieve: Vec<Obj> =
        (0..b.object_count()).filter(|&w| (0..a.object_count()).any(|x| b.le(i.obj(x), w))).collect();
    let mut retraction = vec![None; b.object_count()];
    for &w in &cosieve {
        let below: Vec<Obj> = (0..a.object_count()).filter(|&x| b.le(i.obj(x), w)).collect();
        match below.iter().find(|&&m| below.iter().all(|&x| a.le(x, m))) {
            Some(&m) => retraction[w] = Some(m),
            None => return Ok(None),
        }
    }
    let witness = DwyerWitness { inclusion: i.clone(), cosieve, retraction };
    witness.verify()?;
    Ok(Some(witness))
}

/// `S × i: S × A → S × B` for a discrete category `S`, with witness `S × W`, `S × r`.
pub fn discrete_product_witness(s: &Arc<FinCat>, w: &DwyerWitness) -> Result<DwyerWitness> {
    if s.non_identities().next().is_some() {
        return Err(Error::Malformed("the factor must be discrete".into()));
    }
    let (a, b) = (w.source().clone(), w.target().clone());
    let pa = crate::fincat::product(s, &a);
    let pb = crate::fincat::product(s, &b);
    let obj_map: Vec<Obj> = (0..pa.cat.object_count())
        .map(|o| pb.obj(o / a.object_count(), w.inclusion.obj(o % a.object_count())))
        .collect();
    let mor_map = (0..pa.cat.morphism_count())
        .map(|m| pb.mor(m / a.morphism_count(), w.inclusion.mor(m % a.morphism_count())))
        .collect();
    let inclusion = CatFunctor::new(pa.cat.clone(), pb.cat.clone(), obj_map, mor_map)?;
    let nb = b.object_count();
    let mut cosieve = Vec::new();
    let mut retraction = vec![None; pb.cat.object_count()];
    for x in 0..s.object_count() {
        for &y in &w.cosieve {
            let o = pb.obj(x, y);
            cosieve.push(o);
            retraction[o] = w.retraction[y].map(|r| pa.obj(x, r));
        }
    }
    cosieve.sort_unstable();
    debug_assert_eq!(retraction.len(), s.object_count() * nb);
    let out = DwyerWitness { inclusion, cosieve, retraction };
    out.verify()?;
    Ok(out)
}

/// The inclusion of the full subcategory on `keep` into `b`.
pub fn full_inclusion(b: &Arc<FinCat>, keep: &[Obj]) -> CatFunctor {
    let (sub, mors) = b.full_subcategory(keep);
    CatFunctor::from_morphisms(Arc::new(sub), b.clone(), mors).expect("full subcategory inclusion")
}
