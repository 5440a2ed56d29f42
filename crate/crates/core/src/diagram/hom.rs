//! The category `𝓗om(O, X)` of natural maps from a discrete diagram into a
//! Cat-valued one.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use super::{CatDiagram, DiagramMap, ProductDiagram, SetDiagram};
use crate::error::{Error, Result};
use crate::fincat::{fresh_name, CatFunctor, FinCat, Mor, Morphism, Obj};

/// `𝓗om(O, X)`: objects are families `x_(i,e) ∈ ob X(i)` indexed by the
/// elements `e ∈ O(i)` and compatible with every action; morphisms are
/// compatible families of morphisms, composed pointwise.
#[derive(Clone, Debug)]
pub struct HomCat {
    pub cat: Arc<FinCat>,
    /// The slots `(i, e)`, in the order used by every family.
    pub slots: Vec<(Obj, usize)>,
    pub object_families: Vec<Vec<Obj>>,
    pub morphism_families: Vec<Vec<Mor>>,
    object_index: HashMap<Vec<Obj>, Obj>,
    morphism_index: HashMap<Vec<Mor>, Mor>,
}

impl HomCat {
    pub fn object_of(&self, family: &[Obj]) -> Option<Obj> {
        self.object_index.get(family).copied()
    }

    pub fn morphism_of(&self, family: &[Mor]) -> Option<Mor> {
        self.morphism_index.get(family).copied()
    }

    /// `𝓗om(O, φ): 𝓗om(O, X) → 𝓗om(O, Y)` for `φ: X → Y`; `other` must be `𝓗om(O, Y)`.
    pub fn postcompose(&self, phi: &DiagramMap, other: &HomCat) -> Result<CatFunctor> {
        if self.slots != other.slots {
            return Err(Error::IndexMismatch);
        }
        let missing = || Error::NotNatural("postcomposite is not a natural family".into());
        let obj_map = self
            .object_families
            .iter()
            .map(|f| {
                let image: Vec<Obj> = f.iter().zip(&self.slots).map(|(&x, &(i, _))| phi.components[i].obj(x)).collect();
                other.object_of(&image).ok_or_else(missing)
            })
            .collect::<Result<Vec<_>>>()?;
        let mor_map = self
            .morphism_families
            .iter()
            .map(|f| {
                let image: Vec<Mor> = f.iter().zip(&self.slots).map(|(&x, &(i, _))| phi.components[i].mor(x)).collect();
                other.morphism_of(&image).ok_or_else(missing)
            })
            .collect::<Result<Vec<_>>>()?;
        CatFunctor::new(self.cat.clone(), other.cat.clone(), obj_map, mor_map)
    }
}

/// The map `O × K → X` adjoint to a functor `f: K → 𝓗om(O, X)`, where
/// `ok = O × K` was built by [`super::product_const`] from [`super::embed_discrete`].
pub fn attaching_map(h: &HomCat, x: &Arc<CatDiagram>, f: &CatFunctor, ok: &ProductDiagram) -> Result<DiagramMap> {
    if *f.target() != h.cat || *f.source() != ok.factor {
        return Err(Error::NotFunctor("expected a functor K → 𝓗om(O, X)".into()));
    }
    let k = &ok.factor;
    let slot = |j: Obj, e: usize| h.slots.iter().position(|&s| s == (j, e)).expect("every element has a slot");
    let components = (0..x.index().object_count())
        .map(|j| {
            let p = &ok.products[j];
            let elements = p.left.target().object_count();
            let mut obj_map = vec![0; p.cat.object_count()];
            let mut mor_map = vec![0; p.cat.morphism_count()];
            for e in 0..elements {
                let s = slot(j, e);
                for y in 0..k.object_count() {
                    obj_map[p.obj(e, y)] = h.object_families[f.obj(y)][s];
                }
                // the value of O is discrete: its morphism e is the identity of e
                for m in 0..k.morphism_count() {
                    mor_map[p.mor(e, m)] = h.morphism_families[f.mor(m)][s];
                }
            }
            CatFunctor::new(p.cat.clone(), x.value(j).clone(), obj_map, mor_map)
        })
        .collect::<Result<Vec<_>>>()?;
    DiagramMap::new(ok.diagram.clone(), x.clone(), components)
}

/// Natural families with values in `count(i)` choices per slot, where `apply(m, v)`
/// transports a value along `m`. Propagates forced values and backtracks on
/// the free ones.
fn natural_families(
    o: &SetDiagram,
    slots: &[(Obj, usize)],
    slot_of: &HashMap<(Obj, usize), usize>,
    count: impl Fn(Obj) -> usize,
    apply: impl Fn(Mor, usize) -> usize,
    budget: usize,
) -> Result<Vec<Vec<usize>>> {
    let index = o.index();
    // out-edges of each slot: (morphism, target slot)
    let edges: Vec<Vec<(Mor, usize)>> = slots
        .iter()
        .map(|&(i, e)| index.homs_from(i).map(|&m| (m, slot_of[&(index.tgt(m), o.act(m, e))])).collect())
        .collect();
    let mut out = Vec::new();
    let mut assign: Vec<Option<usize>> = vec![None; slots.len()];
    #[allow(clippy::too_many_arguments)]
    fn go(
        assign: &mut Vec<Option<usize>>,
        slots: &[(Obj, usize)],
        edges: &[Vec<(Mor, usize)>],
        count: &dyn Fn(Obj) -> usize,
        apply: &dyn Fn(Mor, usize) -> usize,
        out: &mut Vec<Vec<usize>>,
        budget: usize,
    ) -> Result<()> {
        let Some(s) = assign.iter().position(Option::is_none) else {
            out.push(assign.iter().map(|v| v.expect("assigned")).collect());
            if out.len() > budget {
                return Err(Error::SizeLimitExceeded { required: out.len() as u128, budget: budget as u128 });
            }
            return Ok(());
        };
        for v in 0..count(slots[s].0) {
            let saved = assign.clone();
            assign[s] = Some(v);
            let mut queue = vec![s];
            let mut ok = true;
            while let Some(t) = queue.pop() {
                let val = assign[t].expect("queued slots are assigned");
                for &(m, u) in &edges[t] {
                    let want = apply(m, val);
                    match assign[u] {
                        None => {
                            assign[u] = Some(want);
                            queue.push(u);
                        }
                        Some(have) if have != want => {
                            ok = false;
                            break;
                        }
                        _ => {}
                    }
                }
                if !ok {
                    break;
                }
            }
            if ok {
                go(assign, slots, edges, count, apply, out, budget)?;
            }
            *assign = saved;
        }
        Ok(())
    }
    go(&mut assign, slots, &edges, &count, &apply, &mut out, budget)?;
    Ok(out)
}

fn family_name(parts: Vec<&str>) -> String {
    if parts.len() == 1 {
        parts[0].to_string()
    } else {
        format!("⟨{}⟩", parts.join(","))
    }
}

/// Builds `𝓗om(O, X)`, refusing to list more than `budget` objects or morphisms.
pub fn hom_diagram(o: &SetDiagram, x: &CatDiagram, budget: usize) -> Result<HomCat> {
    if **o.index() != **x.index() {
        return Err(Error::IndexMismatch);
    }
    let index = o.index();
    let slots: Vec<(Obj, usize)> =
        (0..index.object_count()).flat_map(|i| (0..o.value(i).len()).map(move |e| (i, e))).collect();
    let slot_of: HashMap<(Obj, usize), usize> = slots.iter().enumerate().map(|(k, &s)| (s, k)).collect();
    let object_families =
        natural_families(o, &slots, &slot_of, |i| x.value(i).object_count(), |m, v| x.action(m).obj(v), budget)?;
    let morphism_families =
        natural_families(o, &slots, &slot_of, |i| x.value(i).morphism_count(), |m, v| x.action(m).mor(v), budget)?;
    let object_index: HashMap<Vec<Obj>, Obj> =
        object_families.iter().enumerate().map(|(k, f)| (f.clone(), k)).collect();
    let morphism_index: HashMap<Vec<Mor>, Mor> =
        morphism_families.iter().enumerate().map(|(k, f)| (f.clone(), k)).collect();

    let mut taken = HashSet::new();
    let objects: Vec<String> = object_families
        .iter()
        .map(|f| {
            let parts = f.iter().zip(&slots).map(|(&v, &(i, _))| x.value(i).object_name(v)).collect();
            fresh_name(family_name(parts), &mut taken)
        })
        .collect();
    let mut taken = HashSet::new();
    let mut morphisms = Vec::with_capacity(morphism_families.len());
    for f in &morphism_families {
        let parts = f.iter().zip(&slots).map(|(&v, &(i, _))| x.value(i).morphism(v).name.as_str()).collect();
        let endpoint = |pick: &dyn Fn(&FinCat, Mor) -> Obj| -> Result<Obj> {
            let fam: Vec<Obj> = f.iter().zip(&slots).map(|(&v, &(i, _))| pick(x.value(i), v)).collect();
            object_index.get(&fam).copied().ok_or_else(|| Error::NotNatural("endpoint family is not natural".into()))
        };
        morphisms.push(Morphism {
            name: fresh_name(family_name(parts), &mut taken),
            src: endpoint(&|c, m| c.src(m))?,
            tgt: endpoint(&|c, m| c.tgt(m))?,
        });
    }
    let identities = object_families
        .iter()
        .map(|f| {
            let fam: Vec<Mor> = f.iter().zip(&slots).map(|(&v, &(i, _))| x.value(i).identity(v)).collect();
            morphism_index[&fam]
        })
        .collect();
    let cat = FinCat::from_fn(objects, morphisms, identities, |g, f| {
        let fam: Vec<Mor> = morphism_families[g]
            .iter()
            .zip(&morphism_families[f])
            .zip(&slots)
            .map(|((&a, &b), &(i, _))| x.value(i).comp(a, b))
            .collect();
        morphism_index.get(&fam).copied()
    })?;
    Ok(HomCat { cat: Arc::new(cat), slots, object_families, morphism_families, object_index, morphism_index })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::embed_discrete;
    use crate::fincat::is_isomorphic;

    const B: usize = 1 << 16;

    #[test]
    fn point_over_terminal_evaluates() {
        let t = Arc::new(FinCat::terminal());
        let c = Arc::new(FinCat::cyclic_group(3));
        let x = CatDiagram::constant(t.clone(), c.clone());
        let h = hom_diagram(&SetDiagram::point(t), &x, B).unwrap();
        assert!(is_isomorphic(&h.cat, &c));
    }

    #[test]
    fn representable_evaluates_at_its_object() {
        // X over [1]: X(0) = [1], X(1) = [2], X(0<1) = the inclusion missing 1
        let arrow = Arc::new(FinCat::chain(1));
        let x0 = Arc::new(FinCat::chain(1));
        let x1 = Arc::new(FinCat::chain(2));
        let inc = CatFunctor::new(x0.clone(), x1.clone(), vec![0, 2], vec![0, 2, 5]).unwrap();
        let x = CatDiagram::new(
            arrow.clone(),
            vec![x0.clone(), x1.clone()],
            vec![CatFunctor::identity(x0.clone()), inc, CatFunctor::identity(x1.clone())],
        )
        .unwrap();
        for k in 0..2 {
            let h = hom_diagram(&SetDiagram::representable(arrow.clone(), k), &x, B).unwrap();
            assert!(is_isomorphic(&h.cat, x.value(k)), "k = {k}");
        }
    }

    #[test]
    fn constant_value_over_an_orbit() {
        let g = Arc::new(FinCat::cyclic_group(2));
        let free = SetDiagram::representable(g.clone(), 0);
        let c = Arc::new(FinCat::chain(2));
        let h = hom_diagram(&free, &CatDiagram::constant(g, c.clone()), B).unwrap();
        assert!(is_isomorphic(&h.cat, &c));
    }

    #[test]
    fn attaching_maps_are_natural() {
        use crate::diagram::product_const;
        use crate::fincat::functors;
        let g = Arc::new(FinCat::cyclic_group(2));
        let free = SetDiagram::representable(g.clone(), 0);
        let x = Arc::new(CatDiagram::constant(g, Arc::new(FinCat::chain(1))));
        let h = hom_diagram(&free, &x, B).unwrap();
        let k = Arc::new(FinCat::chain(1));
        let ok = product_const(&embed_discrete(&free), &k);
        let all = functors(&k, &h.cat, 1 << 20).unwrap();
        assert_eq!(all.len(), 3);
        for data in all {
            let f = CatFunctor::new(k.clone(), h.cat.clone(), data.obj_map, data.mor_map).unwrap();
            attaching_map(&h, &x, &f, &ok).unwrap();
        }
    }

    #[test]
    fn maps_between_sets() {
        // natural maps from the free Z/2-orbit to itself: the two translations
        let g = Arc::new(FinCat::cyclic_group(2));
        let free = SetDiagram::representable(g, 0);
        let h = hom_diagram(&free, &embed_discrete(&free), B).unwrap();
        assert_eq!(h.cat.object_count(), 2);
        assert_eq!(h.cat.morphism_count(), 2);
    }
}
