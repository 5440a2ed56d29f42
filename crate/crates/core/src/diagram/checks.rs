//! Finite-instance checks for hom-change, cell attachment along Dwyer maps,
//! and pullback preservation.

use std::collections::HashSet;
use std::sync::Arc;

use super::{
    embed_discrete, hom_diagram, product_const, product_const_map, require_orbit, CatDiagram, DiagramMap, HomCat,
    ProductDiagram, SetDiagram,
};
use crate::dwyer::{discrete_product_witness, dwyer_pushout, find_dwyer_witness, DwyerPushout, DwyerWitness};
use crate::error::{Error, Result};
use crate::fincat::{product, product_map, pullback, CatClass, CatFunctor, FinCat, Obj};

/// Result of a diagram-level check, with every category built on the way.
#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub holds: bool,
    pub detail: Option<String>,
    pub values: Vec<Arc<FinCat>>,
}

impl CheckOutcome {
    pub(crate) fn fail(mut self, why: impl Into<String>) -> Self {
        self.holds = false;
        if self.detail.is_none() {
            self.detail = Some(why.into());
        }
        self
    }
}

/// `𝓗om(O, D) × K → 𝓗om(O, D × K)` is an isomorphism. No hypotheses on `O` or `K`.
pub fn hom_change_holds(o: &SetDiagram, d: &CatDiagram, k: &Arc<FinCat>, budget: usize) -> Result<bool> {
    let h = hom_diagram(o, d, budget)?;
    let left = product(&h.cat, k);
    let dk = product_const(d, k);
    let right = hom_diagram(o, &dk.diagram, budget)?;
    let (nk_obj, nk_mor) = (k.object_count(), k.morphism_count());
    let obj_map: Option<Vec<Obj>> = (0..left.cat.object_count())
        .map(|p| {
            let (x, kk) = (p / nk_obj, p % nk_obj);
            let fam: Vec<Obj> =
                h.object_families[x].iter().zip(&h.slots).map(|(&v, &(i, _))| dk.products[i].obj(v, kk)).collect();
            right.object_of(&fam)
        })
        .collect();
    let mor_map: Option<Vec<Obj>> = (0..left.cat.morphism_count())
        .map(|p| {
            let (x, kk) = (p / nk_mor, p % nk_mor);
            let fam: Vec<Obj> =
                h.morphism_families[x].iter().zip(&h.slots).map(|(&v, &(i, _))| dk.products[i].mor(v, kk)).collect();
            right.morphism_of(&fam)
        })
        .collect();
    let (Some(obj_map), Some(mor_map)) = (obj_map, mor_map) else {
        return Err(Error::NotNatural("comparison family is not natural".into()));
    };
    let cmp = CatFunctor::new(left.cat.clone(), right.cat.clone(), obj_map, mor_map)?;
    Ok(cmp.is_isomorphism())
}

/// The hom-change isomorphism, under its hypotheses: `O` an orbit and `K` a poset.
pub fn hom_change_check(o: &SetDiagram, d: &CatDiagram, k: &Arc<FinCat>, budget: usize) -> Result<bool> {
    require_orbit(o)?;
    if !k.is_poset() {
        return Err(Error::NotPoset("K".into()));
    }
    hom_change_holds(o, d, k, budget)
}

/// The pointwise pushout `X_{a+1}` of `O × i` along `F: O × K → X_a`.
#[derive(Clone, Debug)]
pub struct CellAttachment {
    pub result: Arc<CatDiagram>,
    /// `O × K`, the source of the attaching map.
    pub o_k: ProductDiagram,
    /// `O × L`.
    pub o_l: ProductDiagram,
    /// `O × i: O × K → O × L`.
    pub cell: DiagramMap,
    /// `O × L → X_{a+1}`.
    pub from_l: DiagramMap,
    /// `X_a → X_{a+1}`, pointwise injective.
    pub from_x: DiagramMap,
    pub pieces: Vec<DwyerPushout>,
}

/// Attaches the cell `O × i` to `X_a = f.target` along `f`.
///
/// Each value is the Dwyer pushout of `O(j) × i`; the action of an index
/// morphism `m: j → j'` is the functor induced by `O(m) × L` and `X_a(m)`.
pub fn pushout_diagram(o: &SetDiagram, w: &DwyerWitness, f: &DiagramMap) -> Result<CellAttachment> {
    require_orbit(o)?;
    let (k, l) = (w.source().clone(), w.target().clone());
    let od = embed_discrete(o);
    let o_k = product_const(&od, &k);
    let o_l = product_const(&od, &l);
    if *f.source != *o_k.diagram {
        return Err(Error::Malformed("attaching map must start at O × K".into()));
    }
    let x = &f.target;
    let index = o.index().clone();
    let mut pieces = Vec::with_capacity(index.object_count());
    for j in 0..index.object_count() {
        let wj = discrete_product_witness(od.value(j), w)?;
        pieces.push(dwyer_pushout(&wj, &f.components[j])?);
    }
    let id_l = CatFunctor::identity(l.clone());
    let action = (0..index.morphism_count())
        .map(|m| {
            let (s, t) = (index.src(m), index.tgt(m));
            let beta = product_map(od.action(m), &id_l, &o_l.products[s], &o_l.products[t])?.then(&pieces[t].from_b)?;
            let gamma = x.action(m).then(&pieces[t].from_c)?;
            pieces[s].induced(&beta, &gamma)
        })
        .collect::<Result<Vec<_>>>()?;
    let result = Arc::new(CatDiagram::new(index, pieces.iter().map(|p| p.cat.clone()).collect(), action)?);
    let cell = product_const_map(&od, &w.inclusion, &o_k, &o_l)?;
    let from_l =
        DiagramMap::new(o_l.diagram.clone(), result.clone(), pieces.iter().map(|p| p.from_b.clone()).collect())?;
    let from_x = DiagramMap::new(x.clone(), result.clone(), pieces.iter().map(|p| p.from_c.clone()).collect())?;
    Ok(CellAttachment { result, o_k, o_l, cell, from_l, from_x, pieces })
}

/// Whether `𝓗om(O', −)` sends the cell attachment to a pushout along a Dwyer
/// map between posets, and whether the objects of `𝓗om(O', X_{a+1})` split as
/// `ob 𝓗om(O', X_a) ⊔ ob 𝓗om(O', O) × (L ∖ K)`.
pub fn q1_check(
    o: &SetDiagram,
    o2: &SetDiagram,
    w: &DwyerWitness,
    f: &DiagramMap,
    budget: usize,
) -> Result<CheckOutcome> {
    require_orbit(o2)?;
    let att = pushout_diagram(o, w, f)?;
    let h_k = hom_diagram(o2, &att.o_k.diagram, budget)?;
    let h_l = hom_diagram(o2, &att.o_l.diagram, budget)?;
    let h_x = hom_diagram(o2, &f.target, budget)?;
    let h_x1 = hom_diagram(o2, &att.result, budget)?;
    let mut values: Vec<Arc<FinCat>> = f.target.values().to_vec();
    values.extend(att.result.values().iter().cloned());
    values.extend([h_x.cat.clone(), h_x1.cat.clone()]);
    let out = CheckOutcome { holds: true, detail: None, values };

    let left = h_k.postcompose(&att.cell, &h_l)?;
    let top = h_k.postcompose(f, &h_x)?;
    let from_l = h_l.postcompose(&att.from_l, &h_x1)?;
    let from_x = h_x.postcompose(&att.from_x, &h_x1)?;
    if !h_k.cat.is_poset() || !h_l.cat.is_poset() {
        return Ok(out.fail("hom categories of the cell are not posets"));
    }
    let Some(wit) = find_dwyer_witness(&left)? else {
        return Ok(out.fail("left leg is not a Dwyer map"));
    };
    let p = dwyer_pushout(&wit, &top)?;
    let cmp = p.induced(&from_l, &from_x)?;
    if !cmp.is_isomorphism() {
        return Ok(out.fail("comparison from the pushout is not an isomorphism"));
    }
    if !object_decomposition(o, o2, &att, &h_x, &h_x1, &from_x, w, budget)? {
        return Ok(out.fail("object decomposition fails"));
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn object_decomposition(
    o: &SetDiagram,
    o2: &SetDiagram,
    att: &CellAttachment,
    h_x: &HomCat,
    h_x1: &HomCat,
    from_x: &CatFunctor,
    w: &DwyerWitness,
    budget: usize,
) -> Result<bool> {
    let maps = hom_diagram(o2, &embed_discrete(o), budget)?;
    let l = w.target();
    let mut in_k = vec![false; l.object_count()];
    for &y in w.inclusion.obj_map() {
        in_k[y] = true;
    }
    let old: HashSet<Obj> = from_x.obj_map().iter().copied().collect();
    if old.len() != h_x.cat.object_count() {
        return Ok(false);
    }
    let mut new = HashSet::new();
    for phi in &maps.object_families {
        for y in (0..l.object_count()).filter(|&y| !in_k[y]) {
            let fam: Vec<Obj> = phi
                .iter()
                .zip(&h_x1.slots)
                .map(|(&e, &(j, _))| att.from_l.components[j].obj(att.o_l.products[j].obj(e, y)))
                .collect();
            let Some(x) = h_x1.object_of(&fam) else {
                return Ok(false);
            };
            if old.contains(&x) || !new.insert(x) {
                return Ok(false);
            }
        }
    }
    Ok(old.len() + new.len() == h_x1.cat.object_count())
}

/// `𝓗om(O, B ×_A C) ≅ 𝓗om(O, B) ×_{𝓗om(O, A)} 𝓗om(O, C)` for a cospan `B → A ← C`.
pub fn pullback_preservation_check(o: &SetDiagram, f: &DiagramMap, g: &DiagramMap, budget: usize) -> Result<bool> {
    if *f.target != *g.target {
        return Err(Error::Malformed("cospan legs have different targets".into()));
    }
    let index = o.index().clone();
    let pieces =
        (0..index.object_count()).map(|j| pullback(&f.components[j], &g.components[j])).collect::<Result<Vec<_>>>()?;
    // (x, y) ↦ (B(m) x, C(m) y)
    let action = (0..index.morphism_count())
        .map(|m| {
            let (s, t) = (index.src(m), index.tgt(m));
            let (bm, cm) = (f.source.action(m), g.source.action(m));
            let (ps, pt) = (&pieces[s], &pieces[t]);
            let find_obj = |x, y| (0..pt.cat.object_count()).find(|&q| pt.left.obj(q) == x && pt.right.obj(q) == y);
            let find_mor = |x, y| (0..pt.cat.morphism_count()).find(|&q| pt.left.mor(q) == x && pt.right.mor(q) == y);
            let obj_map = (0..ps.cat.object_count())
                .map(|q| find_obj(bm.obj(ps.left.obj(q)), cm.obj(ps.right.obj(q))))
                .collect::<Option<Vec<_>>>();
            let mor_map = (0..ps.cat.morphism_count())
                .map(|q| find_mor(bm.mor(ps.left.mor(q)), cm.mor(ps.right.mor(q))))
                .collect::<Option<Vec<_>>>();
            match (obj_map, mor_map) {
                (Some(o), Some(m)) => CatFunctor::new(ps.cat.clone(), pt.cat.clone(), o, m),
                _ => Err(Error::NotNatural("cospan is not natural".into())),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let p = Arc::new(CatDiagram::new(index, pieces.iter().map(|q| q.cat.clone()).collect(), action)?);
    let to_b = DiagramMap::new(p.clone(), f.source.clone(), pieces.iter().map(|q| q.left.clone()).collect())?;
    let to_c = DiagramMap::new(p.clone(), g.source.clone(), pieces.iter().map(|q| q.right.clone()).collect())?;
    let h_p = hom_diagram(o, &p, budget)?;
    let h_b = hom_diagram(o, &f.source, budget)?;
    let h_c = hom_diagram(o, &g.source, budget)?;
    let h_a = hom_diagram(o, &f.target, budget)?;
    let hp_b = h_p.postcompose(&to_b, &h_b)?;
    let hp_c = h_p.postcompose(&to_c, &h_c)?;
    let hb_a = h_b.postcompose(f, &h_a)?;
    let hc_a = h_c.postcompose(g, &h_a)?;
    let q = pullback(&hb_a, &hc_a)?;
    let obj_map = (0..h_p.cat.object_count())
        .map(|x| (0..q.cat.object_count()).find(|&y| q.left.obj(y) == hp_b.obj(x) && q.right.obj(y) == hp_c.obj(x)))
        .collect::<Option<Vec<_>>>();
    let mor_map = (0..h_p.cat.morphism_count())
        .map(|x| (0..q.cat.morphism_count()).find(|&y| q.left.mor(y) == hp_b.mor(x) && q.right.mor(y) == hp_c.mor(x)))
        .collect::<Option<Vec<_>>>();
    let (Some(obj_map), Some(mor_map)) = (obj_map, mor_map) else {
        return Ok(false);
    };
    Ok(CatFunctor::new(h_p.cat.clone(), q.cat.clone(), obj_map, mor_map)?.is_isomorphism())
}

/// Whether a check held with every category it built lying in `class`.
pub fn restrict_subcategory(outcome: &CheckOutcome, class: CatClass) -> bool {
    outcome.holds && outcome.values.iter().all(|v| v.classify().satisfies(class))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dwyer::full_inclusion;
    use crate::fincat::is_isomorphic;

    const B: usize = 1 << 16;

    fn z2() -> Arc<FinCat> {
        Arc::new(FinCat::cyclic_group(2))
    }

    /// `{0} ↪ [1]` with its witness.
    fn point_cell() -> DwyerWitness {
        find_dwyer_witness(&full_inclusion(&Arc::new(FinCat::chain(1)), &[0])).unwrap().unwrap()
    }

    #[test]
    fn hom_change_on_orbits_and_its_failure_off_them() {
        let g = z2();
        let free = SetDiagram::representable(g.clone(), 0);
        let d = CatDiagram::constant(g.clone(), Arc::new(FinCat::cyclic_group(3)));
        assert!(hom_change_check(&free, &d, &Arc::new(FinCat::chain(1)), B).unwrap());
        // two points over a discrete index: not an orbit, and the map is not onto
        let two = Arc::new(FinCat::discrete(["a", "b"]));
        let o = SetDiagram::constant(two.clone(), &["x", "y"]);
        let t = CatDiagram::constant(two, Arc::new(FinCat::terminal()));
        let k = Arc::new(FinCat::discrete(["p", "q"]));
        assert!(matches!(hom_change_check(&o, &t, &k, B), Err(Error::NotOrbit(4))));
        assert!(!hom_change_holds(&o, &t, &k, B).unwrap());
    }

    #[test]
    fn free_z2_cell() {
        // attach O × [1] to O × {0} along the identity: the result is O × [1]
        let g = z2();
        let free = SetDiagram::representable(g.clone(), 0);
        let w = point_cell();
        let ok = product_const(&embed_discrete(&free), w.source());
        let id = DiagramMap::identity(ok.diagram.clone());
        let att = pushout_diagram(&free, &w, &id).unwrap();
        let v = att.result.value(0);
        assert_eq!(v.object_count(), 4);
        assert!(is_isomorphic(v, att.o_l.diagram.value(0)));
        // the generator swaps the two copies
        let sigma = att.result.action(1);
        assert!((0..4).all(|x| sigma.obj(x) != x));
        for o2 in [free.clone(), SetDiagram::point(g.clone())] {
            let out = q1_check(&free, &o2, &w, &id, B).unwrap();
            assert!(out.holds, "{:?}", out.detail);
            assert!(restrict_subcategory(&out, CatClass::POS));
        }
    }

    #[test]
    fn cell_over_the_terminal_index_is_a_single_pushout() {
        let t = Arc::new(FinCat::terminal());
        let w = point_cell();
        let pt = SetDiagram::point(t.clone());
        let ok = product_const(&embed_discrete(&pt), w.source());
        let c = Arc::new(FinCat::cyclic_group(3));
        let x = Arc::new(CatDiagram::constant(t, c.clone()));
        let f = DiagramMap::new(
            ok.diagram.clone(),
            x,
            vec![CatFunctor::new(ok.diagram.value(0).clone(), c, vec![0], vec![0]).unwrap()],
        )
        .unwrap();
        let att = pushout_diagram(&pt, &w, &f).unwrap();
        assert_eq!(att.result.value(0).object_count(), 2);
        assert_eq!(att.result.value(0).hom(0, 1).len(), 3);
        let out = q1_check(&pt, &pt, &w, &f, B).unwrap();
        assert!(out.holds, "{:?}", out.detail);
        assert!(restrict_subcategory(&out, CatClass::CAT));
        assert!(!restrict_subcategory(&out, CatClass::AC));
    }

    #[test]
    fn pullbacks() {
        let g = z2();
        let free = SetDiagram::representable(g.clone(), 0);
        let a = Arc::new(CatDiagram::constant(g.clone(), Arc::new(FinCat::terminal())));
        let b = Arc::new(CatDiagram::constant(g.clone(), Arc::new(FinCat::chain(1))));
        let c = Arc::new(CatDiagram::constant(g.clone(), Arc::new(FinCat::cyclic_group(2))));
        let to_a = |d: &Arc<CatDiagram>| {
            let v = d.value(0).clone();
            let f =
                CatFunctor::new(v.clone(), a.value(0).clone(), vec![0; v.object_count()], vec![0; v.morphism_count()])
                    .unwrap();
            DiagramMap::new(d.clone(), a.clone(), vec![f]).unwrap()
        };
        assert!(pullback_preservation_check(&free, &to_a(&b), &to_a(&c), B).unwrap());
        let id = DiagramMap::identity(a.clone());
        assert!(pullback_preservation_check(&free, &to_a(&b), &id, B).unwrap());
    }
}
