//! Set- and Cat-valued diagrams over a finite index category, their
//! colimits and enriched homs, and finite-instance checks of the statements
//! that make orbit-detected model structures work.

mod checks;
mod hom;
mod json;
mod tower;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::{product, product_map, CatFunctor, FinCat, Mor, Obj, Product};
use crate::simplicial::{categorify, subdivide, FinSSet};

pub use checks::{
    hom_change_check, hom_change_holds, pullback_preservation_check, pushout_diagram, q1_check, restrict_subcategory,
    CellAttachment, CheckOutcome,
};
pub use hom::{attaching_map, hom_diagram, HomCat};
pub use json::{RawCatDiagram, RawDiagramMap, RawSetDiagram, RawTower};
pub use tower::{chain_colimit, q2_check, tower_colimit, ChainColimit, Tower};

/// A functor `I → Set` with finite values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetDiagram {
    index: Arc<FinCat>,
    values: Vec<Vec<String>>,
    action: Vec<Vec<usize>>,
}

impl SetDiagram {
    /// `values[i]` names the elements at object `i`; `action[m]` is the
    /// function along morphism `m`, as a list of element indices.
    pub fn new(index: Arc<FinCat>, values: Vec<Vec<String>>, action: Vec<Vec<usize>>) -> Result<Self> {
        if values.len() != index.object_count() || action.len() != index.morphism_count() {
            return Err(Error::Malformed("one value per object and one action per morphism are required".into()));
        }
        for (m, f) in action.iter().enumerate() {
            let (s, t) = (index.src(m), index.tgt(m));
            if f.len() != values[s].len() || f.iter().any(|&y| y >= values[t].len()) {
                return Err(Error::NotFunctorial(format!("action of {} is not a function", index.morphism(m).name)));
            }
        }
        for o in 0..index.object_count() {
            let id = &action[index.identity(o)];
            if id.iter().enumerate().any(|(x, &y)| x != y) {
                return Err(Error::NotFunctorial(format!("identity of {} acts nontrivially", index.object_name(o))));
            }
        }
        let d = SetDiagram { index, values, action };
        d.check_composition()?;
        Ok(d)
    }

    fn check_composition(&self) -> Result<()> {
        let i = &self.index;
        for f in 0..i.morphism_count() {
            for &g in i.homs_from(i.tgt(f)) {
                let gf = i.comp(g, f);
                for x in 0..self.values[i.src(f)].len() {
                    if self.action[g][self.action[f][x]] != self.action[gf][x] {
                        return Err(Error::NotFunctorial(format!(
                            "{} ∘ {} acts differently from their composite",
                            i.morphism(g).name,
                            i.morphism(f).name
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// The constant diagram at a finite set.
    pub fn constant(index: Arc<FinCat>, elements: &[&str]) -> Self {
        let values = vec![elements.iter().map(|e| e.to_string()).collect(); index.object_count()];
        let action = vec![(0..elements.len()).collect(); index.morphism_count()];
        SetDiagram { index, values, action }
    }

    /// The constant one-point diagram.
    pub fn point(index: Arc<FinCat>) -> Self {
        SetDiagram::constant(index, &["*"])
    }

    /// The representable `I(k, −)`.
    pub fn representable(index: Arc<FinCat>, k: Obj) -> Self {
        let pos = |i: Obj, m: Mor| index.hom(k, i).iter().position(|&x| x == m).expect("hom member");
        let values = (0..index.object_count())
            .map(|i| index.hom(k, i).iter().map(|&m| index.morphism(m).name.clone()).collect())
            .collect();
        let action = (0..index.morphism_count())
            .map(|g| {
                let (s, t) = (index.src(g), index.tgt(g));
                index.hom(k, s).iter().map(|&f| pos(t, index.comp(g, f))).collect()
            })
            .collect();
        SetDiagram { index: index.clone(), values, action }
    }

    pub fn index(&self) -> &Arc<FinCat> {
        &self.index
    }

    pub fn value(&self, i: Obj) -> &[String] {
        &self.values[i]
    }

    pub fn values(&self) -> &[Vec<String>] {
        &self.values
    }

    /// `O(m)(x)`.
    pub fn act(&self, m: Mor, x: usize) -> usize {
        self.action[m][x]
    }

    pub fn action(&self, m: Mor) -> &[usize] {
        &self.action[m]
    }

    /// Total number of elements over all objects.
    pub fn size(&self) -> usize {
        self.values.iter().map(Vec::len).sum()
    }
}

/// The colimit of a set-valued diagram, as equivalence classes of `(object, element)`.
pub fn colim_set(d: &SetDiagram) -> Vec<Vec<(Obj, usize)>> {
    let i = d.index();
    let offsets: Vec<usize> = d
        .values
        .iter()
        .scan(0, |acc, v| {
            let o = *acc;
            *acc += v.len();
            Some(o)
        })
        .collect();
    let mut parent: Vec<usize> = (0..d.size()).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut y = x;
        while parent[y] != r {
            let next = parent[y];
            parent[y] = r;
            y = next;
        }
        r
    }
    for m in 0..i.morphism_count() {
        let (s, t) = (i.src(m), i.tgt(m));
        for x in 0..d.values[s].len() {
            let (a, b) = (find(&mut parent, offsets[s] + x), find(&mut parent, offsets[t] + d.action[m][x]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut classes: Vec<Vec<(Obj, usize)>> = Vec::new();
    let mut class_of = vec![usize::MAX; d.size()];
    for o in 0..i.object_count() {
        for x in 0..d.values[o].len() {
            let r = find(&mut parent, offsets[o] + x);
            if class_of[r] == usize::MAX {
                class_of[r] = classes.len();
                classes.push(Vec::new());
            }
            classes[class_of[r]].push((o, x));
        }
    }
    classes
}

/// Whether the colimit is a single point.
pub fn is_orbit(d: &SetDiagram) -> bool {
    colim_set(d).len() == 1
}

fn require_orbit(d: &SetDiagram) -> Result<()> {
    match colim_set(d).len() {
        1 => Ok(()),
        n => Err(Error::NotOrbit(n)),
    }
}

/// A list of orbits over a shared index category.
#[derive(Clone, Debug)]
pub struct OrbitCollection {
    pub index: Arc<FinCat>,
    pub members: Vec<SetDiagram>,
}

impl OrbitCollection {
    pub fn new(index: Arc<FinCat>, members: Vec<SetDiagram>) -> Result<Self> {
        for m in &members {
            if **m.index() != *index {
                return Err(Error::IndexMismatch);
            }
            require_orbit(m)?;
        }
        Ok(OrbitCollection { index, members })
    }
}

/// A functor `I → Cat` with finite values.
#[derive(Clone, Debug, PartialEq)]
pub struct CatDiagram {
    index: Arc<FinCat>,
    values: Vec<Arc<FinCat>>,
    action: Vec<CatFunctor>,
}

impl CatDiagram {
    pub fn new(index: Arc<FinCat>, values: Vec<Arc<FinCat>>, action: Vec<CatFunctor>) -> Result<Self> {
        if values.len() != index.object_count() || action.len() != index.morphism_count() {
            return Err(Error::Malformed("one value per object and one action per morphism are required".into()));
        }
        for (m, f) in action.iter().enumerate() {
            if **f.source() != *values[index.src(m)] || **f.target() != *values[index.tgt(m)] {
                return Err(Error::NotFunctorial(format!(
                    "action of {} has the wrong endpoints",
                    index.morphism(m).name
                )));
            }
        }
        for o in 0..index.object_count() {
            let id = &action[index.identity(o)];
            if id.obj_map().iter().enumerate().any(|(x, &y)| x != y)
                || id.mor_map().iter().enumerate().any(|(x, &y)| x != y)
            {
                return Err(Error::NotFunctorial(format!("identity of {} acts nontrivially", index.object_name(o))));
            }
        }
        for f in 0..index.morphism_count() {
            for &g in index.homs_from(index.tgt(f)) {
                let gf = index.comp(g, f);
                let (af, ag, agf) = (&action[f], &action[g], &action[gf]);
                let objs = af.obj_map().iter().zip(agf.obj_map()).all(|(&x, &y)| ag.obj(x) == y);
                let mors = af.mor_map().iter().zip(agf.mor_map()).all(|(&x, &y)| ag.mor(x) == y);
                if !objs || !mors {
                    return Err(Error::NotFunctorial(format!(
                        "{} ∘ {} acts differently from their composite",
                        index.morphism(g).name,
                        index.morphism(f).name
                    )));
                }
            }
        }
        Ok(CatDiagram { index, values, action })
    }

    /// The constant diagram at `c`.
    pub fn constant(index: Arc<FinCat>, c: Arc<FinCat>) -> Self {
        let action = vec![CatFunctor::identity(c.clone()); index.morphism_count()];
        let values = vec![c; index.object_count()];
        CatDiagram { index, values, action }
    }

    pub fn index(&self) -> &Arc<FinCat> {
        &self.index
    }

    pub fn value(&self, i: Obj) -> &Arc<FinCat> {
        &self.values[i]
    }

    pub fn values(&self) -> &[Arc<FinCat>] {
        &self.values
    }

    pub fn action(&self, m: Mor) -> &CatFunctor {
        &self.action[m]
    }

    /// Whether every value is a poset.
    pub fn is_poset_valued(&self) -> bool {
        self.values.iter().all(|v| v.is_poset())
    }

    pub fn is_acyclic_valued(&self) -> bool {
        self.values.iter().all(|v| v.classify().is_acyclic)
    }
}

/// A natural transformation between Cat-valued diagrams.
#[derive(Clone, Debug)]
pub struct DiagramMap {
    pub source: Arc<CatDiagram>,
    pub target: Arc<CatDiagram>,
    pub components: Vec<CatFunctor>,
}

impl DiagramMap {
    /// Checks every naturality square on objects and morphisms.
    pub fn new(source: Arc<CatDiagram>, target: Arc<CatDiagram>, components: Vec<CatFunctor>) -> Result<Self> {
        if *source.index != *target.index {
            return Err(Error::IndexMismatch);
        }
        let index = source.index.clone();
        if components.len() != index.object_count() {
            return Err(Error::Malformed("one component per object is required".into()));
        }
        for (i, c) in components.iter().enumerate() {
            if **c.source() != *source.values[i] || **c.target() != *target.values[i] {
                return Err(Error::NotNatural(format!(
                    "component at {} has the wrong endpoints",
                    index.object_name(i)
                )));
            }
        }
        for m in 0..index.morphism_count() {
            let (s, t) = (index.src(m), index.tgt(m));
            let (x, y) = (&source.action[m], &target.action[m]);
            let objs = (0..source.values[s].object_count())
                .all(|o| y.obj(components[s].obj(o)) == components[t].obj(x.obj(o)));
            let mors = (0..source.values[s].morphism_count())
                .all(|f| y.mor(components[s].mor(f)) == components[t].mor(x.mor(f)));
            if !objs || !mors {
                return Err(Error::NotNatural(format!("square at {} does not commute", index.morphism(m).name)));
            }
        }
        Ok(DiagramMap { source, target, components })
    }

    pub fn identity(d: Arc<CatDiagram>) -> Self {
        let components = d.values.iter().map(|v| CatFunctor::identity(v.clone())).collect();
        DiagramMap { source: d.clone(), target: d, components }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &DiagramMap) -> Result<DiagramMap> {
        if *self.target != *other.source {
            return Err(Error::Malformed("diagram maps are not composable".into()));
        }
        let components =
            self.components.iter().zip(&other.components).map(|(f, g)| f.then(g)).collect::<Result<_>>()?;
        Ok(DiagramMap { source: self.source.clone(), target: other.target.clone(), components })
    }

    /// Injective on objects and morphisms at every index object.
    pub fn is_monomorphism(&self) -> bool {
        self.components.iter().all(CatFunctor::is_monomorphism)
    }
}

/// `O` as a diagram of discrete categories.
pub fn embed_discrete(o: &SetDiagram) -> CatDiagram {
    let values: Vec<Arc<FinCat>> = o.values.iter().map(|v| Arc::new(FinCat::discrete(v.iter().cloned()))).collect();
    let action = (0..o.index.morphism_count())
        .map(|m| {
            let (s, t) = (o.index.src(m), o.index.tgt(m));
            // discrete categories list the identity of object x as morphism x
            let map = o.action[m].clone();
            CatFunctor::new(values[s].clone(), values[t].clone(), map.clone(), map).expect("functions are functors")
        })
        .collect();
    CatDiagram { index: o.index.clone(), values, action }
}

/// A pointwise product `D(i) × K` with the products kept for indexing.
#[derive(Clone, Debug)]
pub struct ProductDiagram {
    pub diagram: Arc<CatDiagram>,
    pub products: Vec<Product>,
    pub factor: Arc<FinCat>,
}

/// `D × K`, with `K` constant.
pub fn product_const(d: &CatDiagram, k: &Arc<FinCat>) -> ProductDiagram {
    let products: Vec<Product> = d.values.iter().map(|v| product(v, k)).collect();
    let id = CatFunctor::identity(k.clone());
    let action = (0..d.index.morphism_count())
        .map(|m| {
            let (s, t) = (d.index.src(m), d.index.tgt(m));
            product_map(&d.action[m], &id, &products[s], &products[t]).expect("product of functors")
        })
        .collect();
    let values = products.iter().map(|p| p.cat.clone()).collect();
    let diagram = Arc::new(CatDiagram { index: d.index.clone(), values, action });
    ProductDiagram { diagram, products, factor: k.clone() }
}

/// `D × f: D × K → D × L` for `f: K → L`.
pub fn product_const_map(
    d: &CatDiagram,
    f: &CatFunctor,
    dk: &ProductDiagram,
    dl: &ProductDiagram,
) -> Result<DiagramMap> {
    let components = (0..d.index.object_count())
        .map(|i| product_map(&CatFunctor::identity(d.values[i].clone()), f, &dk.products[i], &dl.products[i]))
        .collect::<Result<_>>()?;
    DiagramMap::new(dk.diagram.clone(), dl.diagram.clone(), components)
}

/// `c Sd² K`.
pub fn csd2(k: &FinSSet, budget: usize) -> Result<Arc<FinCat>> {
    let sd2 = subdivide(&subdivide(k)?)?;
    Ok(categorify(&sd2, budget)?.cat)
}

/// `O ⊗ K = O × c Sd² K`.
pub fn copower(o: &SetDiagram, k: &FinSSet, budget: usize) -> Result<ProductDiagram> {
    if !k.is_complete() {
        return Err(Error::IncompleteInput(k.truncation_dim()));
    }
    Ok(product_const(&embed_discrete(o), &csd2(k, budget)?))
}
