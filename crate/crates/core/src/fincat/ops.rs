use std::collections::HashMap;
use std::sync::Arc;

use super::{functors, CatFunctor, FinCat, FunctorData, Mor, Morphism, Obj};
use crate::error::{Error, Result};

/// A binary product with its projections.
#[derive(Clone, Debug)]
pub struct Product {
    pub cat: Arc<FinCat>,
    pub left: CatFunctor,
    pub right: CatFunctor,
}

impl Product {
    /// Index of the object `(a, b)`.
    pub fn obj(&self, a: Obj, b: Obj) -> Obj {
        a * self.right.target().object_count() + b
    }

    /// Index of the morphism `(f, g)`.
    pub fn mor(&self, f: Mor, g: Mor) -> Mor {
        f * self.right.target().morphism_count() + g
    }
}

/// `c × d` with componentwise composition.
pub fn product(c: &Arc<FinCat>, d: &Arc<FinCat>) -> Product {
    let (no, nm) = (d.object_count(), d.morphism_count());
    let mut objects = Vec::with_capacity(c.object_count() * no);
    for a in c.objects() {
        for b in d.objects() {
            objects.push(format!("({a},{b})"));
        }
    }
    let mut morphisms = Vec::with_capacity(c.morphism_count() * nm);
    for f in c.morphisms() {
        for g in d.morphisms() {
            morphisms.push(Morphism {
                name: format!("({},{})", f.name, g.name),
                src: f.src * no + g.src,
                tgt: f.tgt * no + g.tgt,
            });
        }
    }
    let identities = (0..c.object_count())
        .flat_map(|a| (0..no).map(move |b| (a, b)))
        .map(|(a, b)| c.identity(a) * nm + d.identity(b))
        .collect();
    let cat = Arc::new(
        FinCat::from_fn(objects, morphisms, identities, |g, f| {
            let (g1, g2) = (g / nm, g % nm);
            let (f1, f2) = (f / nm, f % nm);
            Some(c.compose(g1, f1)? * nm + d.compose(g2, f2)?)
        })
        .expect("product of valid categories"),
    );
    let left = CatFunctor::new_unchecked(
        cat.clone(),
        c.clone(),
        (0..cat.object_count()).map(|o| o / no).collect(),
        (0..cat.morphism_count()).map(|m| m / nm).collect(),
    );
    let right = CatFunctor::new_unchecked(
        cat.clone(),
        d.clone(),
        (0..cat.object_count()).map(|o| o % no).collect(),
        (0..cat.morphism_count()).map(|m| m % nm).collect(),
    );
    Product { cat, left, right }
}

/// `f × g` between two products.
pub fn product_map(f: &CatFunctor, g: &CatFunctor, source: &Product, target: &Product) -> Result<CatFunctor> {
    let (sa, sb) = (source.left.target(), source.right.target());
    let obj_map = (0..source.cat.object_count())
        .map(|o| target.obj(f.obj(o / sb.object_count()), g.obj(o % sb.object_count())))
        .collect();
    let mor_map = (0..source.cat.morphism_count())
        .map(|m| target.mor(f.mor(m / sb.morphism_count()), g.mor(m % sb.morphism_count())))
        .collect();
    debug_assert_eq!(sa.object_count() * sb.object_count(), source.cat.object_count());
    CatFunctor::new(source.cat.clone(), target.cat.clone(), obj_map, mor_map)
}

/// The strict pullback `b ×_a c` of `f: b → a` and `g: c → a` with its projections.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub cat: Arc<FinCat>,
    pub left: CatFunctor,
    pub right: CatFunctor,
}

pub fn pullback(f: &CatFunctor, g: &CatFunctor) -> Result<Pullback> {
    if f.target() != g.target() {
        return Err(Error::Malformed("pullback legs have different targets".into()));
    }
    let (b, c) = (f.source(), g.source());
    let mut objects = Vec::new();
    let mut obj_pairs = Vec::new();
    let mut obj_index = HashMap::new();
    for x in 0..b.object_count() {
        for y in 0..c.object_count() {
            if f.obj(x) == g.obj(y) {
                obj_index.insert((x, y), obj_pairs.len());
                obj_pairs.push((x, y));
                objects.push(format!("({},{})", b.object_name(x), c.object_name(y)));
            }
        }
    }
    let mut morphisms = Vec::new();
    let mut mor_pairs = Vec::new();
    let mut mor_index = HashMap::new();
    for x in 0..b.morphism_count() {
        for y in 0..c.morphism_count() {
            if f.mor(x) == g.mor(y) {
                mor_index.insert((x, y), mor_pairs.len());
                mor_pairs.push((x, y));
                morphisms.push(Morphism {
                    name: format!("({},{})", b.morphism(x).name, c.morphism(y).name),
                    src: obj_index[&(b.src(x), c.src(y))],
                    tgt: obj_index[&(b.tgt(x), c.tgt(y))],
                });
            }
        }
    }
    let identities = obj_pairs.iter().map(|&(x, y)| mor_index[&(b.identity(x), c.identity(y))]).collect();
    let cat = Arc::new(FinCat::from_fn(objects, morphisms, identities, |p, q| {
        let ((p1, p2), (q1, q2)) = (mor_pairs[p], mor_pairs[q]);
        mor_index.get(&(b.compose(p1, q1)?, c.compose(p2, q2)?)).copied()
    })?);
    let left = CatFunctor::new(
        cat.clone(),
        b.clone(),
        obj_pairs.iter().map(|p| p.0).collect(),
        mor_pairs.iter().map(|p| p.0).collect(),
    )?;
    let right = CatFunctor::new(
        cat.clone(),
        c.clone(),
        obj_pairs.iter().map(|p| p.1).collect(),
        mor_pairs.iter().map(|p| p.1).collect(),
    )?;
    Ok(Pullback { cat, left, right })
}

/// The functor category `𝓗om(c, d)` with the data behind each object and morphism.
#[derive(Clone, Debug)]
pub struct InternalHom {
    pub cat: Arc<FinCat>,
    pub functors: Vec<FunctorData>,
    /// `(source functor, target functor, components)` per morphism.
    pub transformations: Vec<(usize, usize, Vec<Mor>)>,
    index: HashMap<FunctorData, usize>,
}

impl InternalHom {
    pub fn functor_index(&self, f: &FunctorData) -> Option<usize> {
        self.index.get(f).copied()
    }

    /// `𝓗om(c, g)`: postcomposition with `g: d → d'`, landing in `other = 𝓗om(c, d')`.
    pub fn postcompose(&self, g: &CatFunctor, other: &InternalHom) -> Option<CatFunctor> {
        let obj_map = self
            .functors
            .iter()
            .map(|f| {
                other.functor_index(&FunctorData {
                    obj_map: f.obj_map.iter().map(|&o| g.obj(o)).collect(),
                    mor_map: f.mor_map.iter().map(|&m| g.mor(m)).collect(),
                })
            })
            .collect::<Option<Vec<_>>>()?;
        let lookup: HashMap<(usize, usize, Vec<Mor>), usize> =
            other.transformations.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        let mor_map = self
            .transformations
            .iter()
            .map(|(s, t, comps)| {
                let key = (obj_map[*s], obj_map[*t], comps.iter().map(|&m| g.mor(m)).collect());
                lookup.get(&key).copied()
            })
            .collect::<Option<Vec<_>>>()?;
        CatFunctor::new(self.cat.clone(), other.cat.clone(), obj_map, mor_map).ok()
    }
}

/// Enumerates all functors `c → d` and natural transformations between them.
pub fn internal_hom(c: &FinCat, d: &FinCat, budget: u128) -> Result<InternalHom> {
    let fs = functors(c, d, budget)?;
    let d_poset = d.is_poset();
    let objects: Vec<String> = fs.iter().map(|f| functor_name(c, d, f, d_poset)).collect();
    let mut morphisms = Vec::new();
    let mut transformations = Vec::new();
    let mut identities = vec![0; fs.len()];
    for (i, f) in fs.iter().enumerate() {
        for (j, g) in fs.iter().enumerate() {
            for comps in transformations_between(c, d, f, g) {
                if i == j && comps.iter().enumerate().all(|(o, &m)| m == d.identity(f.obj_map[o])) {
                    identities[i] = morphisms.len();
                }
                let name = if d_poset {
                    format!("{}≤{}", objects[i], objects[j])
                } else {
                    let parts: Vec<&str> = comps.iter().map(|&m| d.morphism(m).name.as_str()).collect();
                    format!("{}⇒{}:[{}]", objects[i], objects[j], parts.join(","))
                };
                morphisms.push(Morphism { name, src: i, tgt: j });
                transformations.push((i, j, comps));
            }
        }
    }
    let lookup: HashMap<(usize, usize, Vec<Mor>), usize> =
        transformations.iter().enumerate().map(|(k, t)| (t.clone(), k)).collect();
    let cat = FinCat::from_fn(objects, morphisms, identities, |b, a| {
        let (s, _, ca) = &transformations[a];
        let (_, t, cb) = &transformations[b];
        let comps: Vec<Mor> = ca.iter().zip(cb).map(|(&x, &y)| d.comp(y, x)).collect();
        lookup.get(&(*s, *t, comps)).copied()
    })?;
    let index = fs.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
    Ok(InternalHom { cat: Arc::new(cat), functors: fs, transformations, index })
}

fn functor_name(c: &FinCat, d: &FinCat, f: &FunctorData, d_poset: bool) -> String {
    let objs: Vec<&str> = f.obj_map.iter().map(|&o| d.object_name(o)).collect();
    if d_poset {
        format!("[{}]", objs.join(","))
    } else {
        let mors: Vec<&str> = c.non_identities().map(|m| d.morphism(f.mor_map[m]).name.as_str()).collect();
        format!("[{}|{}]", objs.join(","), mors.join(","))
    }
}

fn transformations_between(c: &FinCat, d: &FinCat, f: &FunctorData, g: &FunctorData) -> Vec<Vec<Mor>> {
    let n = c.object_count();
    let mut out = Vec::new();
    let mut comps = vec![usize::MAX; n];
    fn go(
        o: usize,
        c: &FinCat,
        d: &FinCat,
        f: &FunctorData,
        g: &FunctorData,
        comps: &mut Vec<Mor>,
        out: &mut Vec<Vec<Mor>>,
    ) {
        if o == c.object_count() {
            out.push(comps.clone());
            return;
        }
        for &alpha in d.hom(f.obj_map[o], g.obj_map[o]) {
            comps[o] = alpha;
            let natural = c.non_identities().all(|m| {
                let (a, b) = (c.src(m), c.tgt(m));
                if a > o || b > o {
                    return true;
                }
                d.comp(g.mor_map[m], comps[a]) == d.comp(comps[b], f.mor_map[m])
            });
            if natural {
                go(o + 1, c, d, f, g, comps, out);
            }
        }
        comps[o] = usize::MAX;
    }
    go(0, c, d, f, g, &mut comps, &mut out);
    out
}
