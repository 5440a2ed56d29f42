//! Finite towers of monomorphisms and their unions.

use std::collections::HashMap;
use std::sync::Arc;

use super::{hom_diagram, CatDiagram, CheckOutcome, DiagramMap, SetDiagram};
use crate::error::{Error, Result};
use crate::fincat::{CatFunctor, FinCat, Mor, Morphism, Obj};

/// `X_0 → X_1 → … → X_n` with pointwise injective links.
#[derive(Clone, Debug)]
pub struct Tower {
    pub stages: Vec<Arc<CatDiagram>>,
    pub links: Vec<DiagramMap>,
}

impl Tower {
    pub fn new(stages: Vec<Arc<CatDiagram>>, links: Vec<DiagramMap>) -> Result<Self> {
        if stages.is_empty() || links.len() + 1 != stages.len() {
            return Err(Error::Malformed("a tower needs one link between consecutive stages".into()));
        }
        for (a, link) in links.iter().enumerate() {
            if *link.source != *stages[a] || *link.target != *stages[a + 1] {
                return Err(Error::Malformed(format!("link {a} does not join its stages")));
            }
            if !link.is_monomorphism() {
                return Err(Error::NotMonoTower(a));
            }
        }
        Ok(Tower { stages, links })
    }
}

/// The colimit of a chain of injective functors, with its legs.
#[derive(Clone, Debug)]
pub struct ChainColimit {
    pub cat: Arc<FinCat>,
    pub legs: Vec<CatFunctor>,
}

/// Union-find over `(stage, element)` identified along the links.
struct Classes {
    offsets: Vec<usize>,
    class: Vec<usize>,
    /// Earliest `(stage, element)` of each class.
    first: Vec<(usize, usize)>,
}

impl Classes {
    fn new(sizes: &[usize], link: impl Fn(usize, usize) -> usize) -> Self {
        let offsets: Vec<usize> = sizes
            .iter()
            .scan(0, |acc, &n| {
                let o = *acc;
                *acc += n;
                Some(o)
            })
            .collect();
        let total: usize = sizes.iter().sum();
        let mut class = vec![usize::MAX; total];
        let mut first = Vec::new();
        for (a, &n) in sizes.iter().enumerate() {
            for x in 0..n {
                let k = offsets[a] + x;
                if class[k] == usize::MAX {
                    class[k] = first.len();
                    first.push((a, x));
                }
                if a + 1 < sizes.len() {
                    class[offsets[a + 1] + link(a, x)] = class[k];
                }
            }
        }
        Classes { offsets, class, first }
    }

    fn of(&self, a: usize, x: usize) -> usize {
        self.class[self.offsets[a] + x]
    }
}

/// The union of `cats[0] → cats[1] → …`, built as a quotient of the disjoint
/// union. Composites are computed at the later of the two stages involved.
pub fn chain_colimit(cats: &[Arc<FinCat>], links: &[CatFunctor]) -> Result<ChainColimit> {
    if cats.is_empty() || links.len() + 1 != cats.len() {
        return Err(Error::Malformed("a chain needs one link between consecutive stages".into()));
    }
    for (a, l) in links.iter().enumerate() {
        if !l.is_monomorphism() {
            return Err(Error::NotMonoTower(a));
        }
    }
    let last = cats.len() - 1;
    let objs = Classes::new(&cats.iter().map(|c| c.object_count()).collect::<Vec<_>>(), |a, x| links[a].obj(x));
    let mors = Classes::new(&cats.iter().map(|c| c.morphism_count()).collect::<Vec<_>>(), |a, x| links[a].mor(x));
    let push_obj = |mut a: usize, mut x: Obj, to: usize| {
        while a < to {
            x = links[a].obj(x);
            a += 1;
        }
        x
    };
    let push_mor = |mut a: usize, mut x: Mor, to: usize| {
        while a < to {
            x = links[a].mor(x);
            a += 1;
        }
        x
    };
    let objects: Vec<String> =
        objs.first.iter().map(|&(a, x)| cats[last].object_name(push_obj(a, x, last)).to_string()).collect();
    let morphisms: Vec<Morphism> = mors
        .first
        .iter()
        .map(|&(a, x)| Morphism {
            name: cats[last].morphism(push_mor(a, x, last)).name.clone(),
            src: objs.of(a, cats[a].src(x)),
            tgt: objs.of(a, cats[a].tgt(x)),
        })
        .collect();
    let identities = objs.first.iter().map(|&(a, x)| mors.of(a, cats[a].identity(x))).collect();
    let cat = Arc::new(FinCat::from_fn(objects, morphisms, identities, |g, f| {
        let ((ag, g0), (af, f0)) = (mors.first[g], mors.first[f]);
        let at = ag.max(af);
        let gf = cats[at].compose(push_mor(ag, g0, at), push_mor(af, f0, at))?;
        Some(mors.of(at, gf))
    })?);
    let legs = (0..cats.len())
        .map(|a| {
            CatFunctor::new(
                cats[a].clone(),
                cat.clone(),
                (0..cats[a].object_count()).map(|x| objs.of(a, x)).collect(),
                (0..cats[a].morphism_count()).map(|x| mors.of(a, x)).collect(),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ChainColimit { cat, legs })
}

/// The pointwise union of a tower, with its legs.
pub fn tower_colimit(t: &Tower) -> Result<(Arc<CatDiagram>, Vec<DiagramMap>)> {
    let index = t.stages[0].index().clone();
    let pieces = (0..index.object_count())
        .map(|j| {
            let cats: Vec<Arc<FinCat>> = t.stages.iter().map(|s| s.value(j).clone()).collect();
            let links: Vec<CatFunctor> = t.links.iter().map(|l| l.components[j].clone()).collect();
            chain_colimit(&cats, &links)
        })
        .collect::<Result<Vec<_>>>()?;
    // an index morphism acts on a class through any of its representatives
    let action = (0..index.morphism_count())
        .map(|m| {
            let (s, tt) = (index.src(m), index.tgt(m));
            let (ps, pt) = (&pieces[s], &pieces[tt]);
            let mut obj_map = vec![usize::MAX; ps.cat.object_count()];
            let mut mor_map = vec![usize::MAX; ps.cat.morphism_count()];
            for (a, stage) in t.stages.iter().enumerate() {
                let act = stage.action(m);
                for x in 0..stage.value(s).object_count() {
                    let img = pt.legs[a].obj(act.obj(x));
                    let slot = &mut obj_map[ps.legs[a].obj(x)];
                    if *slot != usize::MAX && *slot != img {
                        return Err(Error::NotNatural(format!("tower links are not natural at stage {a}")));
                    }
                    *slot = img;
                }
                for x in 0..stage.value(s).morphism_count() {
                    let img = pt.legs[a].mor(act.mor(x));
                    let slot = &mut mor_map[ps.legs[a].mor(x)];
                    if *slot != usize::MAX && *slot != img {
                        return Err(Error::NotNatural(format!("tower links are not natural at stage {a}")));
                    }
                    *slot = img;
                }
            }
            CatFunctor::new(ps.cat.clone(), pt.cat.clone(), obj_map, mor_map)
        })
        .collect::<Result<Vec<_>>>()?;
    let colim = Arc::new(CatDiagram::new(index, pieces.iter().map(|p| p.cat.clone()).collect(), action)?);
    let legs = t
        .stages
        .iter()
        .enumerate()
        .map(|(a, s)| DiagramMap::new(s.clone(), colim.clone(), pieces.iter().map(|p| p.legs[a].clone()).collect()))
        .collect::<Result<Vec<_>>>()?;
    Ok((colim, legs))
}

/// Whether `colim_a 𝓗om(O, X_a) → 𝓗om(O, colim_a X_a)` is an isomorphism.
pub fn q2_check(o: &SetDiagram, t: &Tower, budget: usize) -> Result<CheckOutcome> {
    let (colim, legs) = tower_colimit(t)?;
    let homs = t.stages.iter().map(|s| hom_diagram(o, s, budget)).collect::<Result<Vec<_>>>()?;
    let hom_links =
        t.links.iter().enumerate().map(|(a, l)| homs[a].postcompose(l, &homs[a + 1])).collect::<Result<Vec<_>>>()?;
    let cats: Vec<Arc<FinCat>> = homs.iter().map(|h| h.cat.clone()).collect();
    let hom_colim = chain_colimit(&cats, &hom_links)?;
    let h_colim = hom_diagram(o, &colim, budget)?;
    let mut values: Vec<Arc<FinCat>> = t.stages.iter().flat_map(|s| s.values().to_vec()).collect();
    values.extend(colim.values().iter().cloned());
    values.extend(cats.iter().cloned());
    values.push(h_colim.cat.clone());
    let mut outcome = CheckOutcome { holds: true, detail: None, values };

    // the comparison sends the class of (a, h) to 𝓗om(O, leg_a)(h)
    let n_obj = hom_colim.cat.object_count();
    let n_mor = hom_colim.cat.morphism_count();
    let mut obj_map: HashMap<Obj, Obj> = HashMap::new();
    let mut mor_map: HashMap<Mor, Mor> = HashMap::new();
    for (a, h) in homs.iter().enumerate() {
        let via = h.postcompose(&legs[a], &h_colim)?;
        for x in 0..h.cat.object_count() {
            let prev = obj_map.insert(hom_colim.legs[a].obj(x), via.obj(x));
            if prev.is_some_and(|p| p != via.obj(x)) {
                return Ok(outcome.fail("comparison is not well defined on objects"));
            }
        }
        for x in 0..h.cat.morphism_count() {
            let prev = mor_map.insert(hom_colim.legs[a].mor(x), via.mor(x));
            if prev.is_some_and(|p| p != via.mor(x)) {
                return Ok(outcome.fail("comparison is not well defined on morphisms"));
            }
        }
    }
    let cmp = CatFunctor::new(
        hom_colim.cat.clone(),
        h_colim.cat.clone(),
        (0..n_obj).map(|x| obj_map[&x]).collect(),
        (0..n_mor).map(|x| mor_map[&x]).collect(),
    )?;
    if !cmp.is_isomorphism() {
        outcome = outcome.fail("comparison is not an isomorphism");
    }
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::is_isomorphic;

    #[test]
    fn union_of_a_chain_of_chains() {
        let cats: Vec<Arc<FinCat>> = (0..3).map(|n| Arc::new(FinCat::chain(n))).collect();
        // [n] ↪ [n+1] onto the first n+1 elements
        let links: Vec<CatFunctor> = (0..2)
            .map(|a| {
                let (s, t) = (&cats[a], &cats[a + 1]);
                let mor_map = (0..s.morphism_count()).map(|m| t.hom(s.src(m), s.tgt(m))[0]).collect();
                CatFunctor::new(s.clone(), t.clone(), (0..s.object_count()).collect(), mor_map).unwrap()
            })
            .collect();
        let c = chain_colimit(&cats, &links).unwrap();
        assert!(is_isomorphic(&c.cat, &FinCat::chain(2)));
        assert!(c.legs.iter().all(CatFunctor::is_monomorphism));
    }

    #[test]
    fn single_stage_and_constant_towers() {
        let g = Arc::new(FinCat::cyclic_group(2));
        let x = Arc::new(CatDiagram::constant(g.clone(), Arc::new(FinCat::chain(1))));
        let one = Tower::new(vec![x.clone()], vec![]).unwrap();
        let (c, legs) = tower_colimit(&one).unwrap();
        assert!(legs[0].components[0].is_isomorphism());
        assert!(is_isomorphic(c.value(0), x.value(0)));
        let id = DiagramMap::identity(x.clone());
        let constant = Tower::new(vec![x.clone(), x.clone(), x.clone()], vec![id.clone(), id]).unwrap();
        let free = SetDiagram::representable(g, 0);
        assert!(q2_check(&free, &constant, 1 << 16).unwrap().holds);
    }

    #[test]
    fn non_mono_links_are_rejected() {
        let t = Arc::new(FinCat::terminal());
        let two = Arc::new(CatDiagram::constant(t.clone(), Arc::new(FinCat::discrete(["a", "b"]))));
        let one = Arc::new(CatDiagram::constant(t.clone(), Arc::new(FinCat::terminal())));
        let collapse = CatFunctor::new(two.value(0).clone(), one.value(0).clone(), vec![0, 0], vec![0, 0]).unwrap();
        let link = DiagramMap::new(two.clone(), one.clone(), vec![collapse]).unwrap();
        assert!(matches!(Tower::new(vec![two, one], vec![link]), Err(Error::NotMonoTower(0))));
    }
}
